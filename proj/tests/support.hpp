// SPDX-License-Identifier: Apache-2.0
//
// Minimal assertion helpers for the plain-main() test programs.

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>

inline int g_failures = 0;

#define CHECK(cond)                                                                  \
    do {                                                                             \
        if (!(cond)) {                                                               \
            std::fprintf(stderr, "[FAIL] %s:%d: %s\n", __FILE__, __LINE__, #cond);   \
            ++g_failures;                                                            \
        }                                                                            \
    } while (0)

#define CHECK_NEAR(a, b, tol)                                                        \
    do {                                                                             \
        const double va_ = (a), vb_ = (b), vt_ = (tol);                              \
        if (!(std::abs(va_ - vb_) <= vt_)) {                                         \
            std::fprintf(stderr, "[FAIL] %s:%d: |%s - %s| = %.6e > %.1e  (%.17g vs %.17g)\n", \
                         __FILE__, __LINE__, #a, #b, std::abs(va_ - vb_), vt_, va_, vb_); \
            ++g_failures;                                                            \
        }                                                                            \
    } while (0)

#define CHECK_THROWS(expr, exception_type)                                           \
    do {                                                                             \
        bool caught_ = false;                                                        \
        try {                                                                        \
            (void)(expr);                                                            \
        } catch (const exception_type&) {                                            \
            caught_ = true;                                                          \
        } catch (...) {                                                              \
        }                                                                            \
        if (!caught_) {                                                              \
            std::fprintf(stderr, "[FAIL] %s:%d: %s did not throw %s\n", __FILE__,    \
                         __LINE__, #expr, #exception_type);                          \
            ++g_failures;                                                            \
        }                                                                            \
    } while (0)

inline int finish(const char* name) {
    if (g_failures > 0) {
        std::fprintf(stderr, "%s: %d check(s) failed\n", name, g_failures);
        return 1;
    }
    std::printf("%s: ok\n", name);
    return 0;
}

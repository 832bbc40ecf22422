#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

// Always-on requirement: never compiled out in Release.
#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

#define REQUIRE_EQ(a, b, msg)                                                     \
    do {                                                                          \
        auto va = (a);                                                            \
        auto vb = (b);                                                            \
        if (!(va == vb)) {                                                        \
            std::ostringstream os_;                                              \
            os_ << msg << " (got " << va << ", want " << vb << ")";              \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " "         \
                      << os_.str() << "\n";                                      \
            std::exit(1);                                                        \
        }                                                                         \
    } while (0)

#define REQUIRE_THROWS(expr, msg)                                               \
    do {                                                                        \
        bool threw_ = false;                                                    \
        try {                                                                   \
            (void)(expr);                                                       \
        } catch (const std::exception&) {                                       \
            threw_ = true;                                                      \
        }                                                                       \
        if (!threw_) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " "        \
                      << msg << " (no exception)\n";                            \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

#pragma once

#include <doctest.h>

#include "micz/error.hpp"
#include "micz/sector.hpp"

#define CHECK_ERROR_CODE(expr, ec)                                                                                     \
    do {                                                                                                               \
        try {                                                                                                          \
            (void)(expr);                                                                                              \
            FAIL("expected " #ec);                                                                                     \
        } catch (const micz::Error& err_) {                                                                            \
            CHECK(err_.code() == micz::ErrorCode::ec);                                                                 \
        }                                                                                                              \
    } while (0)

inline micz::Sector sector(int n, int Q, int L, int J, long Znum = 1, long Zden = 1)
{
    return micz::validate_sector(n, Q, L, J, micz::Rational(Znum, Zden));
}

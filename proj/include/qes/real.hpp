#pragma once

#include <cmath>
#include <limits>

#if defined(__SIZEOF_FLOAT128__) && !defined(QES_NO_FLOAT128) && __has_include(<quadmath.h>)
#define QES_HAS_FLOAT128 1
#include <quadmath.h>
#endif

namespace qes {

/// Elementary functions for the scalar types the dense kernels are
/// instantiated with.
template <class Real>
struct RealTraits;

template <>
struct RealTraits<double>
{
    static double sqrt(double x) { return std::sqrt(x); }
    static double abs(double x) { return std::fabs(x); }
    static double tgamma(double x) { return std::tgamma(x); }
    static double epsilon() { return std::numeric_limits<double>::epsilon(); }
    static bool isfinite(double x) { return std::isfinite(x); }
};

template <>
struct RealTraits<long double>
{
    static long double sqrt(long double x) { return std::sqrt(x); }
    static long double abs(long double x) { return std::fabs(x); }
    static long double tgamma(long double x) { return std::tgamma(x); }
    static long double epsilon() { return std::numeric_limits<long double>::epsilon(); }
    static bool isfinite(long double x) { return std::isfinite(x); }
};

#ifdef QES_HAS_FLOAT128
template <>
struct RealTraits<__float128>
{
    static __float128 sqrt(__float128 x) { return sqrtq(x); }
    static __float128 abs(__float128 x) { return fabsq(x); }
    static __float128 tgamma(__float128 x) { return tgammaq(x); }
    static __float128 epsilon()
    {
        // 2^-112, spelled without the Q literal suffix
        __float128 const two56 = static_cast<__float128>(1ULL << 56);
        return __float128(1) / (two56 * two56);
    }
    static bool isfinite(__float128 x) { return finiteq(x) != 0; }
};

/// Widest IEEE type available; binary128 on GCC/Clang x86-64.
using WideReal = __float128;
#else
using WideReal = long double;
#endif

} // namespace qes

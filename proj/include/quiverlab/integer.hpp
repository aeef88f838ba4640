#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <type_traits>

// Boost 1.74 probes any type with a const_iterator as a potential byte
// container. Eigen 3.4 expressions have one, so mixed products fail to
// compile without this.
namespace quiverlab::detail {
template <class D>
std::true_type eigen_probe(const Eigen::EigenBase<D>*);
std::false_type eigen_probe(...);
template <class C>
inline constexpr bool is_eigen_type = decltype(eigen_probe(static_cast<C*>(nullptr)))::value;
}  // namespace quiverlab::detail

namespace boost::multiprecision::detail {
template <class C>
  requires quiverlab::detail::is_eigen_type<C>
struct is_byte_container<C> : std::false_type {};
}  // namespace boost::multiprecision::detail

namespace quiverlab {

namespace mp = boost::multiprecision;

// cpp_int keeps small values in inline limbs and only allocates once a value
// outgrows them.
using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<Integer>;
using IntVector = DenseVector<Integer>;

inline int sign(const Integer& x) { return x.sign(); }
inline int sign(long long x) { return (x > 0) - (x < 0); }
inline int sign(long x) { return (x > 0) - (x < 0); }
inline int sign(int x) { return (x > 0) - (x < 0); }

inline Integer gcd(const Integer& a, const Integer& b) { return mp::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) { return mp::lcm(a, b); }

inline std::string to_string(const Integer& x) { return x.str(); }

inline bool fits_int64(const Integer& x) {
  static const Integer lo = std::numeric_limits<long long>::min();
  static const Integer hi = std::numeric_limits<long long>::max();
  return x >= lo && x <= hi;
}

}  // namespace quiverlab

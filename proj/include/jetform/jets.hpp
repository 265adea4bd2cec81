#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "jetform/rational.hpp"

namespace jetform {

/// Monomial exponent vectors are packed into one machine word:
/// bits 56..63 hold the total degree, and variable i (i < 8) occupies the
/// nibble at bits 52-4i..55-4i. Packing caps the library at 8 variables and
/// truncation order 15, which covers every space this project works on
/// (ambient dimension up to 8, jet order up to 12). Keys of coprime monomials
/// add componentwise as integers because every retained product has total
/// degree <= 15, so no nibble can overflow.
using MonKey = std::uint64_t;

namespace keys {

constexpr int kMaxVars = 8;
constexpr int kMaxOrder = 15;
constexpr MonKey kExpMask = 0x00FF'FFFF'FFFF'FFFFull;

inline int degree(MonKey k) { return int(k >> 56); }
inline int exponent(MonKey k, int var) { return int((k >> (52 - 4 * var)) & 0xF); }

inline MonKey unit(int var) { return (MonKey(1) << 56) | (MonKey(1) << (52 - 4 * var)); }

MonKey pack(std::span<const int> exps);
std::vector<int> unpack(MonKey k, int nvars);

/// Graded order: total degree first, then lexicographic with variable 0
/// dominating (x^2 before x*y before y^2).
inline bool less(MonKey a, MonKey b) {
    int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return (a & kExpMask) > (b & kExpMask);
}

}  // namespace keys

class PointMap;

/// Truncated multivariate formal power series over the exact rationals.
///
/// A Series knows its variable count, its trusted truncation order N, and a
/// canonical term list: graded-lex sorted, no explicit zeros, no term of
/// total degree > N. Coefficients of degree <= N are exact values of the germ
/// the series represents; nothing is stored or claimed beyond N. Every
/// operation derives the order of its result from the orders of its inputs.
///
/// Values are immutable once built; all operations are pure functions.
class Series {
  public:
    using Term = std::pair<MonKey, Rational>;

    Series(int nvars, int order);

    static Series constant(int nvars, int order, const Rational& c);
    static Series variable(int nvars, int order, int var);
    static Series monomial(int nvars, int order, std::span<const int> exps, const Rational& c);
    static Series from_terms(int nvars, int order, std::vector<Term> terms);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Smallest total degree of a stored term; order()+1 when zero.
    int valuation() const;
    Rational at_zero() const;
    Rational coeff(MonKey k) const;
    Rational coeff(std::span<const int> exps) const;

    Series operator-() const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const Rational& c, const Series& s);
    friend Series operator+(const Series& s, const Rational& c);
    friend Series operator-(const Series& s, const Rational& c);

    bool operator==(const Series& o) const = default;

    /// Formal partial derivative; result order is order()-1.
    Series partial(int var) const;

    /// Same coefficients, order lowered to new_order (terms beyond it drop).
    Series truncated(int new_order) const;

    /// Relabels the trusted order upward. Only sound when the caller knows the
    /// series is exact beyond its stored order (polynomial data, homogeneous
    /// parts of trusted jets); the jet bookkeeping cannot check this.
    Series assuming_order(int new_order) const;

    /// Terms of total degree exactly k, as an exact polynomial at full order.
    Series homogeneous_part(int k) const;

  private:
    void normalize();

    int nvars_;
    int order_;
    std::vector<Term> terms_;
};

/// True when a and b have identical coefficients for all degrees <= k.
bool agree_to_order(const Series& a, const Series& b, int k);

/// Multiplicative inverse of a unit (nonzero at 0); same order.
Series reciprocal(const Series& u);

/// f(phi_1, ..., phi_k) for origin-preserving components phi_i.
Series compose(const Series& f, const PointMap& phi);

/// Composes many series with one map, sharing the monomial-power cache.
std::vector<Series> compose_all(std::span<const Series> fs, const PointMap& phi);

/// Exact division by the variable `var`; throws NotDivisible if any term has
/// zero exponent there. Result order drops by one.
Series divide_by_coordinate(const Series& r, int var);

/// Exact division of r by (y + x^2), implemented by shearing y -> y - x^2,
/// dividing by y and shearing back. Throws NotDivisible when r does not
/// vanish on {y + x^2 = 0}.
Series divide_by_parabola(const Series& r, int x_var, int y_var);

/// Drops a variable the series does not depend on. Throws VariableMismatch
/// if there is any dependence.
Series drop_var(const Series& s, int var);

/// Inserts a fresh variable (on which the result does not depend) at `pos`.
Series insert_var(const Series& s, int pos);

Series swap_vars(const Series& s, int i, int j);

/// Coefficients of powers of `var`: slice j is a series in the remaining
/// variables with order s.order() - j.
std::vector<Series> slice_coeffs(const Series& s, int var);

/// Inverse of slice_coeffs: sum_j slices[j] * var^j.
Series assemble_slices(std::span<const Series> slices, int var, int order);

/// Origin-preserving polynomial map germ between coordinate spaces, stored as
/// one Series per codomain coordinate. Components keep individual trusted
/// orders; order() reports the minimum.
class PointMap {
  public:
    PointMap(int domain_vars, std::vector<Series> components);

    static PointMap identity(int nvars, int order);
    /// v -> A v as a map; A may be rectangular (rows = codomain).
    static PointMap linear(const QMatrix& a, int order);

    int domain_vars() const { return domain_vars_; }
    int codomain_vars() const { return int(components_.size()); }
    int order() const;
    const Series& component(int i) const { return components_[i]; }
    const std::vector<Series>& components() const { return components_; }

    QMatrix jacobian_at_zero() const;
    bool is_linear() const;

    bool operator==(const PointMap& o) const = default;

  private:
    int domain_vars_;
    std::vector<Series> components_;
};

/// a after b: x -> a(b(x)).
PointMap compose_map(const PointMap& a, const PointMap& b);

/// Formal inverse; requires an invertible linear part (SingularJacobian
/// otherwise). compose_map(invert(phi), phi) is the identity to order().
PointMap invert(const PointMap& phi);

/// Replaces the component at `var` of the identity map by the given series.
PointMap coordinate_replacement(int nvars, int var, const Series& s);

bool agree_to_order(const PointMap& a, const PointMap& b, int k);

struct WeierstrassFactors {
    Series unit;  ///< full-space unit, order N-2
    Series a;     ///< in the remaining variables, order N-2
    Series b;     ///< in the remaining variables, order N-1
};

/// Degree-2 preparation: h = unit * (x^2 + a x + b) with unit(0) != 0 and
/// a(0) = b(0) = 0, solved coefficient-by-coefficient in the non-x variables.
/// Requires h(0) = 0, dh/dx(0) = 0 and a nonzero x^2 coefficient at 0
/// (PreconditionViolated otherwise).
WeierstrassFactors weierstrass_prepare(const Series& h, int x_var);

}  // namespace jetform

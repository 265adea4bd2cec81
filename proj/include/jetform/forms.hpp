#pragma once

#include <cstdint>

#include "jetform/jets.hpp"

namespace jetform {

/// Formal vector field: one Series component per coordinate.
class VectorField {
  public:
    VectorField(int nvars, std::vector<Series> components);

    int nvars() const { return nvars_; }
    int order() const;
    const Series& component(int i) const { return components_[size_t(i)]; }
    const std::vector<Series>& components() const { return components_; }
    std::vector<Rational> at_zero() const;
    bool is_zero_at_origin() const;

    bool operator==(const VectorField& o) const = default;

  private:
    int nvars_;
    std::vector<Series> components_;
};

/// Differential k-form with Series coefficients. Index sets are stored as
/// bitmasks over the axes (strictly increasing tuples), sorted and free of
/// zero coefficients; degree-0 forms hold a single mask-0 coefficient.
class Form {
  public:
    using Term = std::pair<std::uint32_t, Series>;

    Form(int nvars, int degree, int order);

    static Form scalar(const Series& s);
    static Form from_terms(int nvars, int degree, int order, std::vector<Term> terms);
    /// dx_i as a 1-form.
    static Form coordinate_differential(int nvars, int order, int axis);

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    int order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    Series coefficient(std::uint32_t mask) const;
    /// True iff every coefficient vanishes at 0.
    bool vanishes_at_zero() const;
    Series scalar_part() const;

    Form operator-() const;
    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    friend Form operator*(const Series& s, const Form& a);
    friend Form operator*(const Rational& c, const Form& a);

    Form truncated(int new_order) const;

    bool operator==(const Form& o) const = default;

  private:
    void normalize();

    int nvars_;
    int degree_;
    int order_;
    std::vector<Term> terms_;
};

bool agree_to_order(const Form& a, const Form& b, int k);

Form wedge(const Form& a, const Form& b);
Form wedge_power(const Form& a, int k);

/// Exterior derivative; order drops by one.
Form d(const Form& a);

/// Interior product Z -| a; the convention makes contract(d/dx, dx^dy) = dy.
Form contract(const VectorField& z, const Form& a);

/// Pullback of `a` along `phi`. Functorial with d and wedge; the order drops
/// by one through the Jacobian except under linear maps.
Form pullback(const PointMap& phi, const Form& a);

/// Radial homotopy: for closed `a` of degree >= 1 returns b with db = a,
/// gaining one order. Throws NotClosed when d(a) != 0.
Form poincare_homotopy(const Form& a);

/// Time-`slice_var` flow chart of Z from the slice {slice_var = 0}, computed
/// as a Lie series. The output satisfies dPhi/dt = Z(Phi) and gains one order
/// over Z. Throws ZeroAtOrigin when Z(0) = 0.
PointMap formal_flow(const VectorField& z, int slice_var);

/// Time-1 map of a field whose components vanish to second order at 0;
/// the Lie series terminates degree by degree.
PointMap exp_field(const VectorField& x);

/// Derivative of s along z.
Series derive_along(const VectorField& z, const Series& s);

}  // namespace jetform

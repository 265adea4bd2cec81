#include "jetform/forms.hpp"

#include <algorithm>
#include <bit>

namespace jetform {

namespace {

int popcount(std::uint32_t m) { return std::popcount(m); }

// Sign of merging dx_A ^ dx_B into the increasing tuple dx_{A|B}: each b in B
// jumps over the elements of A above it.
int merge_sign(std::uint32_t a, std::uint32_t b) {
    int inversions = 0;
    for (std::uint32_t rest = b; rest;) {
        int bit = std::countr_zero(rest);
        rest &= rest - 1;
        inversions += popcount(a >> (bit + 1));
    }
    return inversions % 2 == 0 ? 1 : -1;
}

std::vector<int> mask_axes(std::uint32_t m) {
    std::vector<int> axes;
    for (std::uint32_t rest = m; rest;) {
        axes.push_back(std::countr_zero(rest));
        rest &= rest - 1;
    }
    return axes;
}

}  // namespace

// ---------------------------------------------------------------------------
// VectorField

VectorField::VectorField(int nvars, std::vector<Series> components)
    : nvars_(nvars), components_(std::move(components)) {
    if (int(components_.size()) != nvars_) throw VariableMismatch("component count must equal nvars");
    for (const auto& c : components_)
        if (c.nvars() != nvars_) throw VariableMismatch("component variable count mismatch");
}

int VectorField::order() const {
    int o = keys::kMaxOrder;
    for (const auto& c : components_) o = std::min(o, c.order());
    return o;
}

std::vector<Rational> VectorField::at_zero() const {
    std::vector<Rational> v;
    v.reserve(components_.size());
    for (const auto& c : components_) v.push_back(c.at_zero());
    return v;
}

bool VectorField::is_zero_at_origin() const {
    for (const auto& c : components_)
        if (!is_zero(c.at_zero())) return false;
    return true;
}

Series derive_along(const VectorField& z, const Series& s) {
    if (z.nvars() != s.nvars()) throw VariableMismatch("field/series variable mismatch");
    Series out(s.nvars(), s.order() - 1);
    for (int i = 0; i < s.nvars(); ++i) {
        Series p = s.partial(i);
        if (p.is_zero()) continue;
        out += z.component(i) * p;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Form

Form::Form(int nvars, int degree, int order) : nvars_(nvars), degree_(degree), order_(order) {
    if (degree < 0 || degree > nvars) throw DegreeMismatch("form degree out of range");
    if (nvars > keys::kMaxVars) throw VariableMismatch("variable count out of range");
}

void Form::normalize() {
    for (auto& [m, s] : terms_) {
        if (popcount(m) != degree_) throw DegreeMismatch("index tuple length != degree");
        if (m >> nvars_) throw VariableMismatch("axis index out of range");
        if (s.nvars() != nvars_) throw VariableMismatch("coefficient variable count mismatch");
        if (s.order() > order_) s = s.truncated(order_);
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second.is_zero(); }),
              out.end());
    terms_ = std::move(out);
}

Form Form::scalar(const Series& s) {
    Form f(s.nvars(), 0, s.order());
    if (!s.is_zero()) f.terms_.emplace_back(0, s);
    return f;
}

Form Form::from_terms(int nvars, int degree, int order, std::vector<Term> terms) {
    Form f(nvars, degree, order);
    f.terms_ = std::move(terms);
    f.normalize();
    return f;
}

Form Form::coordinate_differential(int nvars, int order, int axis) {
    Form f(nvars, 1, order);
    f.terms_.emplace_back(std::uint32_t(1) << axis, Series::constant(nvars, order, 1));
    return f;
}

Series Form::coefficient(std::uint32_t mask) const {
    for (const auto& [m, s] : terms_)
        if (m == mask) return s;
    return Series(nvars_, order_);
}

bool Form::vanishes_at_zero() const {
    for (const auto& [m, s] : terms_)
        if (!is_zero(s.at_zero())) return false;
    return true;
}

Series Form::scalar_part() const {
    if (degree_ != 0) throw DegreeMismatch("scalar_part on a form of positive degree");
    if (!terms_.empty()) return terms_.front().second;
    return Series(nvars_, order_);
}

Form Form::operator-() const {
    Form f(nvars_, degree_, order_);
    f.terms_.reserve(terms_.size());
    for (const auto& [m, s] : terms_) f.terms_.emplace_back(m, -s);
    return f;
}

Form operator+(const Form& a, const Form& b) {
    if (a.nvars_ != b.nvars_) throw VariableMismatch("form variable count mismatch");
    if (a.degree_ != b.degree_) throw DegreeMismatch("form degree mismatch");
    Form f(a.nvars_, a.degree_, std::min(a.order_, b.order_));
    f.terms_ = a.terms_;
    f.terms_.insert(f.terms_.end(), b.terms_.begin(), b.terms_.end());
    f.normalize();
    return f;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator*(const Series& s, const Form& a) {
    Form f(a.nvars_, a.degree_, std::min(s.order(), a.order_));
    f.terms_.reserve(a.terms_.size());
    for (const auto& [m, c] : a.terms_) f.terms_.emplace_back(m, s * c);
    f.normalize();
    return f;
}

Form operator*(const Rational& c, const Form& a) {
    Form f(a.nvars_, a.degree_, a.order_);
    f.terms_.reserve(a.terms_.size());
    for (const auto& [m, s] : a.terms_) f.terms_.emplace_back(m, c * s);
    f.normalize();
    return f;
}

Form Form::truncated(int new_order) const {
    Form f(nvars_, degree_, new_order);
    f.terms_.reserve(terms_.size());
    for (const auto& [m, s] : terms_)
        f.terms_.emplace_back(m, s.truncated(std::min(new_order, s.order())));
    f.normalize();
    return f;
}

bool agree_to_order(const Form& a, const Form& b, int k) {
    if (a.nvars() != b.nvars() || a.degree() != b.degree()) return false;
    Series zero_a(a.nvars(), k), zero_b(b.nvars(), k);
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            if (!agree_to_order(ia->second, zero_a, k)) return false;
            ++ia;
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            if (!agree_to_order(ib->second, zero_b, k)) return false;
            ++ib;
        } else {
            if (!agree_to_order(ia->second, ib->second, k)) return false;
            ++ia, ++ib;
        }
    }
    return true;
}

Form wedge(const Form& a, const Form& b) {
    if (a.nvars() != b.nvars()) throw VariableMismatch("form variable count mismatch");
    int deg = a.degree() + b.degree();
    int order = std::min(a.order(), b.order());
    if (deg > a.nvars()) return Form(a.nvars(), a.nvars(), order);  // zero above top degree
    std::vector<Form::Term> terms;
    for (const auto& [ma, sa] : a.terms())
        for (const auto& [mb, sb] : b.terms()) {
            if (ma & mb) continue;
            int sign = merge_sign(ma, mb);
            Series prod = sa * sb;
            terms.emplace_back(ma | mb, sign > 0 ? std::move(prod) : -prod);
        }
    return Form::from_terms(a.nvars(), deg, order, std::move(terms));
}

Form wedge_power(const Form& a, int k) {
    if (k < 0) throw DegreeMismatch("negative wedge power");
    Form acc = Form::scalar(Series::constant(a.nvars(), a.order(), 1));
    for (int i = 0; i < k; ++i) acc = wedge(acc, a);
    return acc;
}

Form d(const Form& a) {
    std::vector<Form::Term> terms;
    for (const auto& [m, s] : a.terms())
        for (int i = 0; i < a.nvars(); ++i) {
            std::uint32_t bit = std::uint32_t(1) << i;
            if (m & bit) continue;
            Series p = s.partial(i);
            if (p.is_zero()) continue;
            int sign = popcount(m & (bit - 1)) % 2 == 0 ? 1 : -1;
            terms.emplace_back(m | bit, sign > 0 ? std::move(p) : -p);
        }
    return Form::from_terms(a.nvars(), a.degree() + 1, a.order() - 1, std::move(terms));
}

Form contract(const VectorField& z, const Form& a) {
    if (z.nvars() != a.nvars()) throw VariableMismatch("field/form variable mismatch");
    if (a.degree() < 1) throw DegreeMismatch("interior product needs degree >= 1");
    int order = std::min(z.order(), a.order());
    std::vector<Form::Term> terms;
    for (const auto& [m, s] : a.terms()) {
        auto axes = mask_axes(m);
        for (size_t j = 0; j < axes.size(); ++j) {
            const Series& zc = z.component(axes[j]);
            if (zc.is_zero()) continue;
            Series prod = zc * s;
            if (j % 2) prod = -prod;
            terms.emplace_back(m & ~(std::uint32_t(1) << axes[j]), std::move(prod));
        }
    }
    return Form::from_terms(a.nvars(), a.degree() - 1, order, std::move(terms));
}

Form pullback(const PointMap& phi, const Form& a) {
    if (a.nvars() != phi.codomain_vars()) throw VariableMismatch("map arity mismatch in pullback");
    int m = phi.domain_vars();
    if (a.degree() == 0) return Form::scalar(compose(a.scalar_part(), phi));

    int order = std::min(a.order(), phi.is_linear() ? phi.order() : phi.order() - 1);

    // one shared power cache for all coefficients
    std::vector<Series> coeffs;
    coeffs.reserve(a.terms().size());
    for (const auto& [mask, s] : a.terms()) coeffs.push_back(s.truncated(std::min(s.order(), order)));
    std::vector<Series> pulled;
    if (!coeffs.empty()) pulled = compose_all(coeffs, phi);

    // differentials of the used components, cached per axis
    std::vector<Form> dphi(size_t(a.nvars()), Form(m, 1, order));
    std::vector<bool> have(size_t(a.nvars()), false);
    auto differential = [&](int axis) -> const Form& {
        if (!have[size_t(axis)]) {
            std::vector<Form::Term> terms;
            for (int v = 0; v < m; ++v) {
                Series p = phi.component(axis).partial(v);
                if (!p.is_zero())
                    terms.emplace_back(std::uint32_t(1) << v, p.truncated(std::min(p.order(), order)));
            }
            dphi[size_t(axis)] = Form::from_terms(m, 1, order, std::move(terms));
            have[size_t(axis)] = true;
        }
        return dphi[size_t(axis)];
    };

    Form out(m, a.degree(), order);
    for (size_t t = 0; t < a.terms().size(); ++t) {
        Form w = Form::scalar(pulled[t]);
        for (int axis : mask_axes(a.terms()[t].first)) w = wedge(w, differential(axis));
        out = out + w;
    }
    return out;
}

Form poincare_homotopy(const Form& a) {
    int k = a.degree();
    if (k < 1) throw DegreeMismatch("homotopy needs degree >= 1");
    if (!d(a).is_zero()) throw NotClosed("form is not closed to trusted order");
    int order = std::min(a.order() + 1, keys::kMaxOrder);
    std::vector<Form::Term> terms;
    for (const auto& [m, s] : a.terms()) {
        auto axes = mask_axes(m);
        for (const auto& [mk, c] : s.terms()) {
            Rational scale = c / Rational(keys::degree(mk) + k);
            for (size_t j = 0; j < axes.size(); ++j) {
                MonKey shifted = mk + keys::unit(axes[j]);
                if (keys::degree(shifted) > order) continue;
                Rational v = j % 2 ? -scale : scale;
                terms.emplace_back(m & ~(std::uint32_t(1) << axes[j]),
                                   Series::from_terms(a.nvars(), order, {{shifted, v}}));
            }
        }
    }
    return Form::from_terms(a.nvars(), k - 1, order, std::move(terms));
}

// ---------------------------------------------------------------------------
// Lie-series flows

namespace {

// Sum of Lie-series terms (1/k!) L_Z^k(u_i), optionally restricted to the
// slice {slice_var = 0} and re-expanded in powers of the slice variable.
// A coefficient of the result at total degree D depends on Z only through
// degree D-1, which justifies labeling the output one order above Z; the
// intermediate truncation keeps only what later terms can still reach.
std::vector<Series> lie_series(const std::vector<Series>& z, int out_order, int slice_var) {
    int m = int(z.size());
    std::vector<Series> lifted;
    lifted.reserve(z.size());
    for (const auto& c : z) lifted.push_back(c.assuming_order(out_order));

    auto restrict_to_slice = [&](const Series& s) {
        std::vector<Series::Term> kept;
        for (const auto& [k, c] : s.terms())
            if (keys::exponent(k, slice_var) == 0) kept.emplace_back(k, c);
        return Series::from_terms(s.nvars(), s.order(), std::move(kept));
    };
    auto shift_slice = [&](const Series& s, int power) {
        std::vector<Series::Term> out;
        for (const auto& [k, c] : s.terms()) {
            if (keys::degree(k) + power > out_order) continue;
            out.emplace_back(k + MonKey(power) * keys::unit(slice_var), c);
        }
        return Series::from_terms(s.nvars(), out_order, std::move(out));
    };

    std::vector<Series> result;
    for (int i = 0; i < m; ++i) {
        Series term = Series::variable(m, out_order, i);
        Series acc = slice_var >= 0 ? restrict_to_slice(term) : term;
        Rational factorial(1);
        for (int k = 1; k <= out_order && !term.is_zero(); ++k) {
            Series next(m, out_order);
            for (int j = 0; j < m; ++j) {
                if (lifted[size_t(j)].is_zero() || term.order() < 1) continue;
                Series p = term.partial(j);
                if (p.is_zero()) continue;
                next += lifted[size_t(j)] * p.assuming_order(out_order);
            }
            int still_needed = std::max(out_order - k + 1, 0);
            term = next.truncated(std::min(next.order(), still_needed)).assuming_order(out_order);
            factorial *= k;
            if (slice_var >= 0)
                acc += (1 / factorial) * shift_slice(restrict_to_slice(term), k);
            else
                acc += (1 / factorial) * term;
        }
        result.push_back(std::move(acc));
    }
    return result;
}

}  // namespace

PointMap formal_flow(const VectorField& z, int slice_var) {
    if (z.is_zero_at_origin()) throw ZeroAtOrigin("flow of a field vanishing at 0");
    if (slice_var < 0 || slice_var >= z.nvars()) throw VariableMismatch("slice variable out of range");
    int out_order = std::min(z.order() + 1, keys::kMaxOrder);
    auto comps = lie_series(z.components(), out_order, slice_var);
    return PointMap(z.nvars(), std::move(comps));
}

PointMap exp_field(const VectorField& x) {
    for (const auto& c : x.components())
        if (!c.is_zero() && c.valuation() < 2)
            throw PreconditionViolated("exp_field needs components vanishing to second order");
    int out_order = std::min(x.order() + 1, keys::kMaxOrder);
    auto comps = lie_series(x.components(), out_order, -1);
    return PointMap(x.nvars(), std::move(comps));
}

}  // namespace jetform

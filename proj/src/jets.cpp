#include "jetform/jets.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace jetform {

namespace keys {

MonKey pack(std::span<const int> exps) {
    if (exps.size() > size_t(kMaxVars)) throw VariableMismatch("too many variables (max 8)");
    MonKey k = 0;
    int deg = 0;
    for (size_t i = 0; i < exps.size(); ++i) {
        int e = exps[i];
        if (e < 0 || e > kMaxOrder) throw Error("exponent out of range");
        deg += e;
        k |= MonKey(e) << (52 - 4 * int(i));
    }
    if (deg > kMaxOrder) throw Error("total degree out of range");
    return k | (MonKey(deg) << 56);
}

std::vector<int> unpack(MonKey k, int nvars) {
    std::vector<int> e(static_cast<size_t>(nvars), 0);
    for (int i = 0; i < nvars; ++i) e[size_t(i)] = exponent(k, i);
    return e;
}

}  // namespace keys

namespace {

inline std::uint64_t hash_key(MonKey k) {
    std::uint64_t x = k * 0x9E3779B97F4A7C15ull;
    return x ^ (x >> 32);
}

struct TmpQ {
    mpq_t q;
    TmpQ() { mpq_init(q); }
    ~TmpQ() { mpq_clear(q); }
    TmpQ(const TmpQ&) = delete;
};

// Open-addressing accumulator for (key -> rational) sums; the hot path of
// multiplication and composition.
class Accum {
  public:
    explicit Accum(size_t expected) {
        size_t want = expected * 2 + 2;
        if (want > (size_t(1) << 20)) want = size_t(1) << 20;
        size_t cap = 16;
        while (cap < want) cap <<= 1;
        slots_.assign(cap, -1);
        mask_ = cap - 1;
    }

    Rational& slot(MonKey k) {
        if ((keys_.size() + 1) * 2 > mask_ + 1) grow();
        size_t i = hash_key(k) & mask_;
        while (true) {
            std::int32_t s = slots_[i];
            if (s < 0) {
                slots_[i] = std::int32_t(keys_.size());
                keys_.push_back(k);
                vals_.emplace_back();
                return vals_.back();
            }
            if (keys_[size_t(s)] == k) return vals_[size_t(s)];
            i = (i + 1) & mask_;
        }
    }

    std::vector<Series::Term> take_sorted() {
        std::vector<Series::Term> out;
        out.reserve(keys_.size());
        for (size_t i = 0; i < keys_.size(); ++i)
            if (!is_zero(vals_[i])) out.emplace_back(keys_[i], std::move(vals_[i]));
        std::sort(out.begin(), out.end(),
                  [](const Series::Term& a, const Series::Term& b) { return keys::less(a.first, b.first); });
        return out;
    }

  private:
    void grow() {
        size_t cap = (mask_ + 1) * 2;
        slots_.assign(cap, -1);
        mask_ = cap - 1;
        for (size_t idx = 0; idx < keys_.size(); ++idx) {
            size_t i = hash_key(keys_[idx]) & mask_;
            while (slots_[i] >= 0) i = (i + 1) & mask_;
            slots_[i] = std::int32_t(idx);
        }
    }

    std::vector<std::int32_t> slots_;
    size_t mask_;
    std::vector<MonKey> keys_;
    std::vector<Rational> vals_;
};

void check_same_space(const Series& a, const Series& b) {
    if (a.nvars() != b.nvars()) throw VariableMismatch("variable count mismatch");
}

}  // namespace

Series::Series(int nvars, int order) : nvars_(nvars), order_(order) {
    if (nvars < 0 || nvars > keys::kMaxVars) throw VariableMismatch("variable count out of range");
    if (order < 0 || order > keys::kMaxOrder) throw Error("truncation order out of range");
}

void Series::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return keys::less(a.first, b.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (keys::degree(t.first) > order_ || jetform::is_zero(t.second)) continue;
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return jetform::is_zero(t.second); }),
              out.end());
    terms_ = std::move(out);
}

Series Series::constant(int nvars, int order, const Rational& c) {
    Series s(nvars, order);
    if (!jetform::is_zero(c)) s.terms_.emplace_back(0, c);
    return s;
}

Series Series::variable(int nvars, int order, int var) {
    if (var < 0 || var >= nvars) throw VariableMismatch("variable index out of range");
    Series s(nvars, order);
    if (order >= 1) s.terms_.emplace_back(keys::unit(var), Rational(1));
    return s;
}

Series Series::monomial(int nvars, int order, std::span<const int> exps, const Rational& c) {
    if (int(exps.size()) != nvars) throw VariableMismatch("exponent count mismatch");
    Series s(nvars, order);
    MonKey k = keys::pack(exps);
    if (keys::degree(k) <= order && !jetform::is_zero(c)) s.terms_.emplace_back(k, c);
    return s;
}

Series Series::from_terms(int nvars, int order, std::vector<Term> terms) {
    Series s(nvars, order);
    s.terms_ = std::move(terms);
    s.normalize();
    return s;
}

int Series::valuation() const {
    if (terms_.empty()) return order_ + 1;
    return keys::degree(terms_.front().first);
}

Rational Series::at_zero() const {
    if (!terms_.empty() && terms_.front().first == 0) return terms_.front().second;
    return Rational(0);
}

Rational Series::coeff(MonKey k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, MonKey key) {
        return keys::less(t.first, key);
    });
    if (it != terms_.end() && it->first == k) return it->second;
    return Rational(0);
}

Rational Series::coeff(std::span<const int> exps) const { return coeff(keys::pack(exps)); }

Series Series::operator-() const {
    Series s(nvars_, order_);
    s.terms_.reserve(terms_.size());
    for (const auto& [k, c] : terms_) s.terms_.emplace_back(k, -c);
    return s;
}

Series operator+(const Series& a, const Series& b) {
    check_same_space(a, b);
    int order = std::min(a.order_, b.order_);
    Series s(a.nvars_, order);
    s.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        bool take_a;
        if (ia == a.terms_.end())
            take_a = false;
        else if (ib == b.terms_.end())
            take_a = true;
        else if (ia->first == ib->first) {
            Rational c = ia->second + ib->second;
            if (!is_zero(c) && keys::degree(ia->first) <= order) s.terms_.emplace_back(ia->first, std::move(c));
            ++ia, ++ib;
            continue;
        } else
            take_a = keys::less(ia->first, ib->first);
        const auto& t = take_a ? *ia++ : *ib++;
        if (keys::degree(t.first) <= order) s.terms_.push_back(t);
    }
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    check_same_space(a, b);
    int order = std::min(a.order_, b.order_);
    Series s(a.nvars_, order);
    if (a.terms_.empty() || b.terms_.empty()) return s;
    Accum acc(a.terms_.size() * b.terms_.size());
    TmpQ tmp;
    for (const auto& [ka, ca] : a.terms_) {
        int da = keys::degree(ka);
        if (da > order) break;
        for (const auto& [kb, cb] : b.terms_) {
            if (da + keys::degree(kb) > order) break;  // terms are degree-sorted
            mpq_mul(tmp.q, ca.get_mpq_t(), cb.get_mpq_t());
            Rational& dst = acc.slot(ka + kb);
            mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), tmp.q);
        }
    }
    s.terms_ = acc.take_sorted();
    return s;
}

Series operator*(const Rational& c, const Series& s) {
    Series out(s.nvars_, s.order_);
    if (is_zero(c)) return out;
    out.terms_.reserve(s.terms_.size());
    for (const auto& [k, v] : s.terms_) out.terms_.emplace_back(k, c * v);
    return out;
}

Series operator+(const Series& s, const Rational& c) {
    return s + Series::constant(s.nvars_, s.order_, c);
}

Series operator-(const Series& s, const Rational& c) { return s + (-c); }

Series Series::partial(int var) const {
    if (var < 0 || var >= nvars_) throw VariableMismatch("variable index out of range");
    if (order_ < 1) throw PreconditionViolated("trusted order exhausted by differentiation");
    Series s(nvars_, order_ - 1);
    s.terms_.reserve(terms_.size());
    for (const auto& [k, c] : terms_) {
        int e = keys::exponent(k, var);
        if (e == 0) continue;
        s.terms_.emplace_back(k - keys::unit(var), Rational(e) * c);
    }
    // dropping the var-free terms keeps graded-lex order, but degrees shifted
    s.normalize();
    return s;
}

Series Series::truncated(int new_order) const {
    if (new_order > order_) throw Error("truncated() cannot raise the trusted order");
    Series s(nvars_, new_order);
    for (const auto& t : terms_) {
        if (keys::degree(t.first) > new_order) break;
        s.terms_.push_back(t);
    }
    return s;
}

Series Series::assuming_order(int new_order) const {
    if (new_order < order_) return truncated(new_order);
    Series s(nvars_, new_order);
    s.terms_ = terms_;
    return s;
}

Series Series::homogeneous_part(int k) const {
    if (k > order_) throw PreconditionViolated("homogeneous part beyond trusted order");
    Series s(nvars_, keys::kMaxOrder);
    for (const auto& t : terms_)
        if (keys::degree(t.first) == k) s.terms_.push_back(t);
    return s;
}

bool agree_to_order(const Series& a, const Series& b, int k) {
    if (a.nvars() != b.nvars()) return false;
    if (k > a.order() || k > b.order()) throw PreconditionViolated("comparison beyond trusted order");
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (true) {
        while (ia != a.terms().end() && keys::degree(ia->first) > k) ++ia;
        while (ib != b.terms().end() && keys::degree(ib->first) > k) ++ib;
        bool ea = ia == a.terms().end() || keys::degree(ia->first) > k;
        bool eb = ib == b.terms().end() || keys::degree(ib->first) > k;
        if (ea || eb) return ea && eb;
        if (ia->first != ib->first || ia->second != ib->second) return false;
        ++ia, ++ib;
    }
}

Series reciprocal(const Series& u) {
    Rational c = u.at_zero();
    if (is_zero(c)) throw NotDivisible("reciprocal of a non-unit");
    // u = c (1 - w) with w of positive valuation; sum the geometric series.
    Series w = Series::constant(u.nvars(), u.order(), 1) - (1 / c) * u;
    Series acc = Series::constant(u.nvars(), u.order(), 1);
    for (int i = 0; i < u.order(); ++i) acc = acc * w + Rational(1);
    return (1 / c) * acc;
}

// ---------------------------------------------------------------------------
// PointMap

PointMap::PointMap(int domain_vars, std::vector<Series> components)
    : domain_vars_(domain_vars), components_(std::move(components)) {
    for (const auto& c : components_) {
        if (c.nvars() != domain_vars_) throw VariableMismatch("component variable count mismatch");
        if (!is_zero(c.at_zero())) throw PreconditionViolated("map must preserve the origin");
    }
}

PointMap PointMap::identity(int nvars, int order) {
    std::vector<Series> comps;
    comps.reserve(size_t(nvars));
    for (int i = 0; i < nvars; ++i) comps.push_back(Series::variable(nvars, order, i));
    return PointMap(nvars, std::move(comps));
}

PointMap PointMap::linear(const QMatrix& a, int order) {
    std::vector<Series> comps;
    comps.reserve(size_t(a.rows()));
    for (int i = 0; i < a.rows(); ++i) {
        Series s(a.cols(), order);
        for (int j = 0; j < a.cols(); ++j)
            s += a.at(i, j) * Series::variable(a.cols(), order, j);
        comps.push_back(std::move(s));
    }
    return PointMap(a.cols(), std::move(comps));
}

int PointMap::order() const {
    int o = keys::kMaxOrder;
    for (const auto& c : components_) o = std::min(o, c.order());
    return o;
}

QMatrix PointMap::jacobian_at_zero() const {
    QMatrix j(codomain_vars(), domain_vars_);
    for (int i = 0; i < codomain_vars(); ++i)
        for (int v = 0; v < domain_vars_; ++v) j.at(i, v) = components_[size_t(i)].coeff(keys::unit(v));
    return j;
}

bool PointMap::is_linear() const {
    for (const auto& c : components_)
        if (!c.is_zero() && keys::degree(c.terms().back().first) > 1) return false;
    return true;
}

PointMap coordinate_replacement(int nvars, int var, const Series& s) {
    std::vector<Series> comps;
    comps.reserve(size_t(nvars));
    for (int i = 0; i < nvars; ++i)
        comps.push_back(i == var ? s : Series::variable(nvars, s.order(), i));
    return PointMap(nvars, std::move(comps));
}

bool agree_to_order(const PointMap& a, const PointMap& b, int k) {
    if (a.domain_vars() != b.domain_vars() || a.codomain_vars() != b.codomain_vars()) return false;
    for (int i = 0; i < a.codomain_vars(); ++i)
        if (!agree_to_order(a.component(i), b.component(i), k)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Composition

namespace {

// Power products of map components, memoized per call so that composing many
// series with the same map shares the work.
class PowerCache {
  public:
    PowerCache(const PointMap& phi, int order) : phi_(phi), order_(order) {
        memo_.emplace(0, Series::constant(phi.domain_vars(), order, 1));
    }

    const Series& power(MonKey k) {
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        int var = 0;
        while (keys::exponent(k, var) == 0) ++var;
        const Series& prev = power(k - keys::unit(var));
        Series p = prev * phi_.component(var).truncated(std::min(order_, phi_.component(var).order()));
        return memo_.emplace(k, std::move(p)).first->second;
    }

  private:
    const PointMap& phi_;
    int order_;
    std::unordered_map<MonKey, Series> memo_;
};

Series compose_with_cache(const Series& f, const PointMap& phi, PowerCache& cache, int order) {
    Series out(phi.domain_vars(), order);
    Accum acc(64);
    TmpQ tmp;
    for (const auto& [k, c] : f.terms()) {
        if (keys::degree(k) > order) break;  // higher terms only feed degrees > order
        const Series& p = cache.power(k);
        for (const auto& [pk, pv] : p.terms()) {
            if (keys::degree(pk) > order) break;
            mpq_mul(tmp.q, c.get_mpq_t(), pv.get_mpq_t());
            Rational& dst = acc.slot(pk);
            mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), tmp.q);
        }
    }
    return Series::from_terms(phi.domain_vars(), order, acc.take_sorted());
}

}  // namespace

Series compose(const Series& f, const PointMap& phi) {
    if (f.nvars() != phi.codomain_vars()) throw VariableMismatch("map arity mismatch in composition");
    int order = std::min(f.order(), phi.order());
    PowerCache cache(phi, order);
    return compose_with_cache(f, phi, cache, order);
}

std::vector<Series> compose_all(std::span<const Series> fs, const PointMap& phi) {
    int order = phi.order();
    for (const auto& f : fs) {
        if (f.nvars() != phi.codomain_vars()) throw VariableMismatch("map arity mismatch in composition");
        order = std::min(order, f.order());
    }
    PowerCache cache(phi, order);
    std::vector<Series> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(compose_with_cache(f, phi, cache, order));
    return out;
}

PointMap compose_map(const PointMap& a, const PointMap& b) {
    auto comps = compose_all(a.components(), b);
    return PointMap(b.domain_vars(), std::move(comps));
}

PointMap invert(const PointMap& phi) {
    int m = phi.domain_vars();
    if (phi.codomain_vars() != m) throw VariableMismatch("only square maps invert");
    int order = phi.order();
    QMatrix l = phi.jacobian_at_zero();
    if (!is_invertible(l)) throw SingularJacobian("map has singular linear part");
    QMatrix linv = inverse(l);

    // phi = L + H with H of valuation >= 2; iterate psi <- Linv (id - H(psi)).
    std::vector<Series> h;
    h.reserve(size_t(m));
    PointMap lmap = PointMap::linear(l, order);
    for (int i = 0; i < m; ++i) h.push_back(phi.component(i) - lmap.component(i));

    PointMap psi = PointMap::linear(linv, order);
    for (int iter = 1; iter < order; ++iter) {
        auto hv = compose_all(h, psi);
        std::vector<Series> comps;
        comps.reserve(size_t(m));
        for (int i = 0; i < m; ++i) {
            Series s(m, order);
            for (int j = 0; j < m; ++j) {
                if (is_zero(linv.at(i, j))) continue;
                s += linv.at(i, j) * (Series::variable(m, order, j) - hv[size_t(j)]);
            }
            comps.push_back(std::move(s));
        }
        PointMap next(m, std::move(comps));
        if (next == psi) break;
        psi = std::move(next);
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Structural variable plumbing

Series drop_var(const Series& s, int var) {
    Series out(s.nvars() - 1, s.order());
    std::vector<Series::Term> terms;
    terms.reserve(s.terms().size());
    for (const auto& [k, c] : s.terms()) {
        if (keys::exponent(k, var) != 0) throw VariableMismatch("series depends on the dropped variable");
        auto e = keys::unpack(k, s.nvars());
        e.erase(e.begin() + var);
        terms.emplace_back(keys::pack(e), c);
    }
    return Series::from_terms(s.nvars() - 1, s.order(), std::move(terms));
}

Series insert_var(const Series& s, int pos) {
    std::vector<Series::Term> terms;
    terms.reserve(s.terms().size());
    for (const auto& [k, c] : s.terms()) {
        auto e = keys::unpack(k, s.nvars());
        e.insert(e.begin() + pos, 0);
        terms.emplace_back(keys::pack(e), c);
    }
    return Series::from_terms(s.nvars() + 1, s.order(), std::move(terms));
}

Series swap_vars(const Series& s, int i, int j) {
    std::vector<Series::Term> terms;
    terms.reserve(s.terms().size());
    for (const auto& [k, c] : s.terms()) {
        auto e = keys::unpack(k, s.nvars());
        std::swap(e[size_t(i)], e[size_t(j)]);
        terms.emplace_back(keys::pack(e), c);
    }
    return Series::from_terms(s.nvars(), s.order(), std::move(terms));
}

std::vector<Series> slice_coeffs(const Series& s, int var) {
    std::vector<std::vector<Series::Term>> buckets(size_t(s.order()) + 1);
    for (const auto& [k, c] : s.terms()) {
        int e = keys::exponent(k, var);
        auto ev = keys::unpack(k, s.nvars());
        ev.erase(ev.begin() + var);
        buckets[size_t(e)].emplace_back(keys::pack(ev), c);
    }
    std::vector<Series> out;
    out.reserve(buckets.size());
    for (int j = 0; j <= s.order(); ++j)
        out.push_back(Series::from_terms(s.nvars() - 1, s.order() - j, std::move(buckets[size_t(j)])));
    return out;
}

Series assemble_slices(std::span<const Series> slices, int var, int order) {
    int nv = slices.empty() ? 1 : slices[0].nvars() + 1;
    std::vector<Series::Term> terms;
    for (size_t j = 0; j < slices.size(); ++j) {
        for (const auto& [k, c] : slices[j].terms()) {
            if (keys::degree(k) + int(j) > order) continue;
            auto e = keys::unpack(k, slices[j].nvars());
            e.insert(e.begin() + var, int(j));
            terms.emplace_back(keys::pack(e), c);
        }
    }
    return Series::from_terms(nv, order, std::move(terms));
}

Series divide_by_coordinate(const Series& r, int var) {
    if (r.order() < 1) throw PreconditionViolated("trusted order exhausted by division");
    std::vector<Series::Term> terms;
    terms.reserve(r.terms().size());
    for (const auto& [k, c] : r.terms()) {
        if (keys::exponent(k, var) == 0)
            throw NotDivisible("series does not vanish on the coordinate hyperplane");
        terms.emplace_back(k - keys::unit(var), c);
    }
    return Series::from_terms(r.nvars(), r.order() - 1, std::move(terms));
}

Series divide_by_parabola(const Series& r, int x_var, int y_var) {
    int m = r.nvars();
    Series y = Series::variable(m, r.order(), y_var);
    Series x = Series::variable(m, r.order(), x_var);
    Series sheared = compose(r, coordinate_replacement(m, y_var, y - x * x));
    Series quotient(m, r.order());
    try {
        quotient = divide_by_coordinate(sheared, y_var);
    } catch (const NotDivisible&) {
        throw NotDivisible("series does not vanish on {y + x^2 = 0}");
    }
    Series yq = Series::variable(m, quotient.order(), y_var);
    Series xq = Series::variable(m, quotient.order(), x_var);
    return compose(quotient, coordinate_replacement(m, y_var, yq + xq * xq));
}

// ---------------------------------------------------------------------------
// Weierstrass preparation (degree 2)

WeierstrassFactors weierstrass_prepare(const Series& h, int x_var) {
    int m = h.nvars();
    int n_ord = h.order();
    if (n_ord < 2) throw PreconditionViolated("order too small for degree-2 preparation");
    if (!is_zero(h.at_zero())) throw PreconditionViolated("h(0) != 0");
    auto slices = slice_coeffs(h, x_var);
    if (!is_zero(slices[1].at_zero())) throw PreconditionViolated("dh/dx(0) != 0");
    Rational u00 = slices[2].at_zero();
    if (is_zero(u00)) throw PreconditionViolated("x^2 coefficient of h vanishes at 0");

    int rest = m - 1;
    int ord_u = n_ord - 2, ord_a = n_ord - 2, ord_b = n_ord - 1;
    // Unknown slices of the unit; U[j] is trusted to rest-degree ord_u - j.
    std::vector<Series> u_slices;
    for (int j = 0; j <= ord_u; ++j) u_slices.push_back(Series(rest, keys::kMaxOrder));
    Series a(rest, keys::kMaxOrder), b(rest, keys::kMaxOrder);

    // Rest-degree 0: h's x-slices from degree two upward give the unit.
    for (int j = 0; j <= ord_u; ++j)
        u_slices[size_t(j)] += slices[size_t(j + 2)].homogeneous_part(0).assuming_order(keys::kMaxOrder);

    auto part = [](const Series& s, int k) { return s.homogeneous_part(k).assuming_order(keys::kMaxOrder); };
    // Unit slices beyond the solved range enter some equations; they stay zero
    // in the output, so zero defaults keep the factorization self-consistent.
    auto uslice = [&](int j, int k) {
        if (j > ord_u) return Series(rest, keys::kMaxOrder);
        return part(u_slices[size_t(j)], k);
    };

    for (int k = 1; k <= ord_b; ++k) {
        // x^0 equation: sum_l U_0^{(k-l)} b^{(l)} = H_0^{(k)}
        Series r0 = part(slices[0], k);
        for (int l = 1; l < k; ++l) r0 -= uslice(0, k - l) * part(b, l);
        Series bk = (1 / u00) * r0;
        b += bk;
        if (k > ord_a) continue;
        // x^1 equation: sum_l (U_0^{(k-l)} a^{(l)} + U_1^{(k-l)} b^{(l)}) = H_1^{(k)}
        Series r1 = part(slices[1], k) - uslice(1, 0) * bk;
        for (int l = 1; l < k; ++l)
            r1 -= uslice(0, k - l) * part(a, l) + uslice(1, k - l) * part(b, l);
        Series ak = (1 / u00) * r1;
        a += ak;
        // x^j (j >= 2): U_{j-2}^{(k)} = H_j^{(k)} - cross terms
        for (int uj = 0; uj + k <= ord_u; ++uj) {
            int j = uj + 2;
            Series rj = part(slices[size_t(j)], k);
            rj -= uslice(j - 1, 0) * ak + uslice(j, 0) * bk;
            for (int l = 1; l < k; ++l)
                rj -= uslice(j - 1, k - l) * part(a, l) + uslice(j, k - l) * part(b, l);
            u_slices[size_t(uj)] += rj;
        }
    }

    std::vector<Series> trimmed;
    for (int j = 0; j <= ord_u; ++j) trimmed.push_back(u_slices[size_t(j)].truncated(ord_u - j));
    WeierstrassFactors out{assemble_slices(trimmed, x_var, ord_u), a.truncated(ord_a), b.truncated(ord_b)};
    return out;
}

}  // namespace jetform

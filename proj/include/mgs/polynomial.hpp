#ifndef MGS_POLYNOMIAL_HPP
#define MGS_POLYNOMIAL_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mgs/rational.hpp"

namespace mgs {

/// Dense univariate polynomial over Rat, coefficients in ascending degree.
/// The zero polynomial has an empty coefficient vector. A polynomial of
/// degree <= 0 is a constant and combines with any variable.
class UniPoly {
  public:
    UniPoly() = default;
    UniPoly(Rat c) {
        if (c != 0) coeffs_.push_back(std::move(c));
    }
    UniPoly(std::vector<Rat> coeffs, std::string var)
        : coeffs_(std::move(coeffs)), var_(std::move(var)) {
        trim();
    }
    explicit UniPoly(const LinScalar& l) {
        coeffs_ = {l.constant, l.slope};
        var_ = l.variable;
        trim();
    }

    static UniPoly variable(std::string var) {
        return UniPoly({Rat(0), Rat(1)}, std::move(var));
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    /// Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::string& var() const { return var_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Rat coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Rat(0);
    }
    Rat constant_term() const { return coeff(0); }
    Rat leading() const {
        return coeffs_.empty() ? Rat(0) : coeffs_.back();
    }

    Rat at(const Rat& x) const {
        Rat acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UniPoly derivative() const {
        if (coeffs_.size() <= 1) return UniPoly();
        std::vector<Rat> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rat(static_cast<long>(i));
        return UniPoly(std::move(d), var_);
    }

    /// p(a + b*x): affine substitution, result in the variable of `inner`
    /// (here given by name).
    UniPoly compose_affine(const Rat& a, const Rat& b, const std::string& new_var) const {
        UniPoly inner({a, b}, new_var);
        UniPoly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * inner + UniPoly(*it);
        return acc;
    }

    friend UniPoly operator+(const UniPoly& p, const UniPoly& q) {
        std::string v = joined_var(p, q);
        std::vector<Rat> c(std::max(p.coeffs_.size(), q.coeffs_.size()), Rat(0));
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) c[i] += p.coeffs_[i];
        for (std::size_t i = 0; i < q.coeffs_.size(); ++i) c[i] += q.coeffs_[i];
        return UniPoly(std::move(c), std::move(v));
    }
    friend UniPoly operator-(const UniPoly& p) {
        std::vector<Rat> c = p.coeffs_;
        for (auto& x : c) x = -x;
        return UniPoly(std::move(c), p.var_);
    }
    friend UniPoly operator-(const UniPoly& p, const UniPoly& q) { return p + (-q); }
    friend UniPoly operator*(const UniPoly& p, const UniPoly& q) {
        if (p.is_zero() || q.is_zero()) return UniPoly();
        std::string v = joined_var(p, q);
        std::vector<Rat> c(p.coeffs_.size() + q.coeffs_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
        return UniPoly(std::move(c), std::move(v));
    }
    friend UniPoly operator*(const Rat& s, const UniPoly& p) { return UniPoly(s) * p; }
    friend UniPoly operator*(const UniPoly& p, const Rat& s) { return UniPoly(s) * p; }
    friend UniPoly operator/(const UniPoly& p, const Rat& s) { return UniPoly(Rat(1) / s) * p; }
    UniPoly& operator+=(const UniPoly& q) { return *this = *this + q; }
    UniPoly& operator-=(const UniPoly& q) { return *this = *this - q; }
    UniPoly& operator*=(const UniPoly& q) { return *this = *this * q; }

    friend bool operator==(const UniPoly& p, const UniPoly& q) {
        return p.coeffs_ == q.coeffs_ &&
               (p.is_constant() || q.is_constant() || p.var_ == q.var_);
    }

    /// Euclidean division; both quotient and remainder.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        UniPoly r = *this;
        std::vector<Rat> q(std::max<std::size_t>(1, coeffs_.size()), Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            Rat f = r.leading() / d.leading();
            int shift = r.degree() - d.degree();
            std::vector<Rat> term(static_cast<std::size_t>(shift) + 1, Rat(0));
            term.back() = f;
            q[static_cast<std::size_t>(shift)] += f;
            r = r - UniPoly(std::move(term), joined_var(*this, d)) * d;
        }
        return {UniPoly(std::move(q), joined_var(*this, d)), r};
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Rat& c = coeffs_[i];
            if (c == 0) continue;
            if (!out.empty()) out += c > 0 ? " + " : " - ";
            else if (c < 0) out += "-";
            Rat a = mgs::abs(c);
            std::string v = var_.empty() ? "v" : var_;
            if (i == 0) out += a.get_str();
            else {
                if (a != 1) out += a.get_str() + "*";
                out += v;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    std::vector<Rat> coeffs_;
    std::string var_;

    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.size() <= 1) var_.clear();
    }

    static std::string joined_var(const UniPoly& p, const UniPoly& q) {
        if (p.is_constant()) return q.var_;
        if (q.is_constant()) return p.var_;
        if (p.var_ != q.var_)
            throw std::invalid_argument("variable mismatch: '" + p.var_ + "' vs '" + q.var_ + "'");
        return p.var_;
    }
};

inline int sign_at(const UniPoly& p, const Rat& x) { return sgn(p.at(x)); }

/// Sign of p on an interval immediately to the right of x: the sign of the
/// first non-vanishing derivative at x. Zero iff p is identically zero.
inline int sign_right_of(const UniPoly& p, const Rat& x) {
    UniPoly q = p;
    while (!q.is_zero()) {
        int s = sign_at(q, x);
        if (s != 0) return s;
        q = q.derivative();
    }
    return 0;
}

/// Sign of p immediately to the left of x.
inline int sign_left_of(const UniPoly& p, const Rat& x) {
    // substitute x - u and look right of u = 0
    UniPoly flipped = p.compose_affine(x, Rat(-1), "u");
    return sign_right_of(flipped, Rat(0));
}

/// Exact real roots of p in the open interval (lo, hi). Rational roots are
/// listed exactly; irrational ones by disjoint isolating intervals.
struct RootReport {
    std::vector<Rat> exact_roots;
    std::vector<std::pair<Rat, Rat>> irrational_root_intervals;
    bool identically_zero = false;

    std::size_t count() const { return exact_roots.size() + irrational_root_intervals.size(); }
};

namespace detail {

inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = a / a.leading();  // monic
    return a;
}

inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.degree() < 1) return p;
    return p.divmod(gcd(p, p.derivative())).first;
}

/// Sturm chain of a squarefree polynomial.
inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        UniPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
        chain.push_back(-r);
    }
    chain.pop_back();
    return chain;
}

inline int sturm_variations(const std::vector<UniPoly>& chain, const Rat& x) {
    int vars = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sign_at(q, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

/// Number of roots in the half-open interval (lo, hi] of a squarefree p.
inline int sturm_count(const std::vector<UniPoly>& chain, const Rat& lo, const Rat& hi) {
    return sturm_variations(chain, lo) - sturm_variations(chain, hi);
}

/// Rational with the smallest denominator strictly inside (lo, hi),
/// via the Stern-Brocot / continued-fraction walk.
inline Rat simplest_rational_between(const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) throw std::invalid_argument("empty interval");
    // An integer in (lo, hi)?
    Int fl = floor_div(lo);
    if (Rat(fl + 1) < hi) return Rat(fl + 1);
    if (lo < 0 && hi > 0) return Rat(0);
    // Shift to (0,1) fractional window and recurse on the reciprocal.
    Rat a = lo - Rat(fl), b = hi - Rat(fl);
    if (a == 0) {
        // (0, b): answer 1/ceil(1/b + eps) -> smallest n with 1/n < b
        Int n = floor_div(Rat(1) / b) + 1;
        return Rat(fl) + Rat(1, n);
    }
    Rat inner = simplest_rational_between(Rat(1) / b, Rat(1) / a);
    return Rat(fl) + Rat(1) / inner;
}

}  // namespace detail

/// All real roots of p in (lo, hi). Degree <= 2 is solved by the
/// discriminant rationality test; higher degrees by Sturm bisection with a
/// simplest-rational probe to recognise rational roots exactly.
inline RootReport isolate_roots(const UniPoly& p, const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) throw std::invalid_argument("isolate_roots: need lo < hi");
    RootReport rep;
    if (p.is_zero()) {
        rep.identically_zero = true;
        return rep;
    }
    if (p.degree() == 0) return rep;

    auto admit = [&](const Rat& r) {
        if (lo < r && r < hi) rep.exact_roots.push_back(r);
    };

    if (p.degree() == 1) {
        admit(-p.coeff(0) / p.coeff(1));
        return rep;
    }
    if (p.degree() == 2) {
        const Rat a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        Rat disc = b * b - 4 * a * c;
        if (disc < 0) return rep;
        if (auto sq = rat_sqrt(disc)) {
            admit((-b - *sq) / (2 * a));
            if (*sq != 0) admit((-b + *sq) / (2 * a));
            std::sort(rep.exact_roots.begin(), rep.exact_roots.end());
            return rep;
        }
        // Two irrational roots; isolate each by bisection against p itself.
        UniPoly q = sgn(a) > 0 ? p : -p;
        Rat vertex = -b / (2 * a);
        auto push_interval = [&](Rat l, Rat h) {
            if (h <= lo || l >= hi) return;
            l = std::max(l, lo);
            h = std::min(h, hi);
            if (sign_at(q, l) * sign_at(q, h) < 0) rep.irrational_root_intervals.emplace_back(l, h);
        };
        // bracket below and above the vertex
        Rat step(1);
        Rat left = vertex - step;
        while (sign_at(q, left) <= 0) {
            step *= 2;
            left = vertex - step;
        }
        step = 1;
        Rat right = vertex + step;
        while (sign_at(q, right) <= 0) {
            step *= 2;
            right = vertex + step;
        }
        push_interval(left, vertex);
        push_interval(vertex, right);
        return rep;
    }

    // General case: Sturm on the squarefree part.
    UniPoly sf = detail::squarefree_part(p);
    // Keep the counting interval open at both ends: Sturm counts (a, b], so
    // nudge hi down past a possible root at hi.
    auto chain = detail::sturm_chain(sf);
    Rat a = lo, b = hi;
    if (sign_at(sf, b) == 0) {
        // shrink b until the root at hi is excluded
        Rat width = (hi - lo) / 2;
        while (detail::sturm_count(chain, hi - width, hi) > 1) width /= 2;
        b = hi - width / 2;
        // b must not itself be a root: sf is squarefree and has finitely many
        // roots; halve until clear.
        while (sign_at(sf, b) == 0) b = hi - (hi - b) / 2;
    }

    // Denominator bound for rational roots of the primitive integer form:
    // any rational root p/q in lowest terms has q dividing the leading
    // integer coefficient.
    Int den_lcm(1);
    for (const auto& cf : sf.coeffs()) den_lcm = lcm(den_lcm, cf.get_den());
    Int lead_int = sf.leading().get_num() * den_lcm / sf.leading().get_den();
    Rat sep = Rat(1, 2) / Rat(lead_int * lead_int);

    struct Task {
        Rat lo, hi;
        int count;
    };
    std::vector<Task> stack{{a, b, detail::sturm_count(chain, a, b)}};
    std::vector<std::pair<Rat, Rat>> isolated;
    while (!stack.empty()) {
        Task t = stack.back();
        stack.pop_back();
        if (t.count == 0) continue;
        if (t.count == 1 && t.hi - t.lo < sep) {
            isolated.emplace_back(t.lo, t.hi);
            continue;
        }
        Rat mid = (t.lo + t.hi) / 2;
        if (sign_at(sf, mid) == 0) {
            rep.exact_roots.push_back(mid);
            // exclude the midpoint root from both halves
            Rat eps = (t.hi - t.lo) / 4;
            while (detail::sturm_count(chain, mid - eps, mid + eps) > 1) eps /= 2;
            Rat ml = mid - eps / 2, mr = mid + eps / 2;
            while (sign_at(sf, ml) == 0) ml = mid - (mid - ml) / 2;
            while (sign_at(sf, mr) == 0) mr = mid + (mr - mid) / 2;
            stack.push_back({t.lo, ml, detail::sturm_count(chain, t.lo, ml)});
            stack.push_back({mr, t.hi, detail::sturm_count(chain, mr, t.hi)});
        } else {
            int left = detail::sturm_count(chain, t.lo, mid);
            stack.push_back({t.lo, mid, left});
            stack.push_back({mid, t.hi, t.count - left});
        }
    }
    for (auto& iv : isolated) {
        // A rational root of sf in this window must be its simplest rational.
        Rat probe = detail::simplest_rational_between(iv.first, iv.second);
        if (sign_at(sf, probe) == 0) {
            rep.exact_roots.push_back(probe);
        } else {
            rep.irrational_root_intervals.push_back(iv);
        }
    }
    std::sort(rep.exact_roots.begin(), rep.exact_roots.end());
    std::sort(rep.irrational_root_intervals.begin(), rep.irrational_root_intervals.end());
    return rep;
}

}  // namespace mgs

#endif

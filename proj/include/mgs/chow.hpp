#ifndef MGS_CHOW_HPP
#define MGS_CHOW_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mgs/polynomial.hpp"
#include "mgs/rational.hpp"

namespace mgs {

class NumericalModel;

/// Element of the even numerical cohomology ring of a fixed model, stored as
/// per-degree coordinate vectors. Coordinates are UniPoly so that classes may
/// carry a linear (or higher) dependence on a segment parameter; plain
/// rational classes are the degree-zero special case.
class GradedClass {
  public:
    GradedClass() = default;
    explicit GradedClass(const NumericalModel& m);

    const NumericalModel& model() const {
        if (!model_) throw std::logic_error("GradedClass without model");
        return *model_;
    }
    bool empty() const { return model_ == nullptr; }

    UniPoly& coord(int degree, std::size_t index) { return comps_[static_cast<std::size_t>(degree)][index]; }
    const UniPoly& coord(int degree, std::size_t index) const {
        return comps_[static_cast<std::size_t>(degree)][index];
    }
    const std::vector<std::vector<UniPoly>>& components() const { return comps_; }

    bool is_zero() const {
        for (const auto& deg : comps_)
            for (const auto& c : deg)
                if (!c.is_zero()) return false;
        return true;
    }

    /// The component concentrated in one degree.
    GradedClass component(int degree) const {
        GradedClass out = zero_like(*this);
        out.comps_[static_cast<std::size_t>(degree)] = comps_[static_cast<std::size_t>(degree)];
        return out;
    }

    GradedClass& operator+=(const GradedClass& o) {
        require_same_model(o);
        for (std::size_t d = 0; d < comps_.size(); ++d)
            for (std::size_t i = 0; i < comps_[d].size(); ++i) comps_[d][i] += o.comps_[d][i];
        return *this;
    }
    GradedClass& operator-=(const GradedClass& o) {
        require_same_model(o);
        for (std::size_t d = 0; d < comps_.size(); ++d)
            for (std::size_t i = 0; i < comps_[d].size(); ++i) comps_[d][i] -= o.comps_[d][i];
        return *this;
    }
    GradedClass& operator*=(const UniPoly& s) {
        for (auto& deg : comps_)
            for (auto& c : deg) c *= s;
        return *this;
    }
    friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
    friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
    friend GradedClass operator*(const UniPoly& s, GradedClass a) { return a *= s; }
    friend GradedClass operator*(GradedClass a, const UniPoly& s) { return a *= s; }
    friend GradedClass operator*(const Rat& s, GradedClass a) { return a *= UniPoly(s); }

    friend bool operator==(const GradedClass& a, const GradedClass& b) {
        return a.comps_ == b.comps_;
    }

    /// Substitute a value for the segment parameter in every coordinate.
    GradedClass at(const Rat& v) const {
        GradedClass out = *this;
        for (auto& deg : out.comps_)
            for (auto& c : deg) c = UniPoly(c.at(v));
        return out;
    }

    std::string str() const;

  private:
    friend class NumericalModel;
    const NumericalModel* model_ = nullptr;
    std::vector<std::vector<UniPoly>> comps_;

    static GradedClass zero_like(const GradedClass& g) {
        GradedClass out;
        out.model_ = g.model_;
        out.comps_.assign(g.comps_.size(), {});
        for (std::size_t d = 0; d < g.comps_.size(); ++d)
            out.comps_[d].assign(g.comps_[d].size(), UniPoly());
        return out;
    }
    void require_same_model(const GradedClass& o) const {
        if (model_ != o.model_) throw std::invalid_argument("classes from different models");
    }
};

/// A graded class concentrated in degree 1, with the user's ampleness
/// assertion recorded.
struct DivisorClass {
    GradedClass cls;
    bool ample = false;
    std::string name;
};

struct ModelViolation {
    std::string kind;  // "commutativity", "associativity", "identity", "normalization"
    std::string detail;
};

/// Exact numerical model of the even cohomology ring of X: named basis per
/// degree, structure constants, and the Todd class. Degree 0 and dim are
/// one-dimensional, the top generator being the point class with integral 1.
class NumericalModel {
  public:
    NumericalModel(std::string name, int dim, std::vector<std::vector<std::string>> basis)
        : name_(std::move(name)), dim_(dim), basis_(std::move(basis)) {
        if (dim_ < 1) throw std::invalid_argument("dim must be >= 1");
        if (static_cast<int>(basis_.size()) != dim_ + 1)
            throw std::invalid_argument("need basis for degrees 0..dim");
        if (basis_[0].size() != 1 || basis_.back().size() != 1)
            throw std::invalid_argument("degrees 0 and dim must be one-dimensional");
        std::size_t total = 0;
        for (int d = 0; d <= dim_; ++d) {
            for (std::size_t i = 0; i < basis_[static_cast<std::size_t>(d)].size(); ++i)
                index_[basis_[static_cast<std::size_t>(d)][i]] = {d, i};
            total += basis_[static_cast<std::size_t>(d)].size();
        }
        if (index_.size() != total) throw std::invalid_argument("duplicate basis name");
    }

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::vector<std::vector<std::string>>& basis() const { return basis_; }
    std::size_t basis_size(int degree) const { return basis_[static_cast<std::size_t>(degree)].size(); }

    /// Structure constants: product of basis elements (p,i) and (q,j) as a
    /// coordinate vector in degree p+q. Unset entries default to zero;
    /// products beyond the top degree are zero.
    void set_product(const std::string& a, const std::string& b, const std::map<std::string, Rat>& result) {
        auto [pa, ia] = locate(a);
        auto [pb, ib] = locate(b);
        if (pa + pb > dim_) {
            if (!result.empty()) throw std::invalid_argument("product above top degree must vanish");
            return;
        }
        std::vector<Rat> coords(basis_size(pa + pb), Rat(0));
        for (const auto& [nm, c] : result) {
            auto [pd, id] = locate(nm);
            if (pd != pa + pb) throw std::invalid_argument("product entry in wrong degree: " + nm);
            coords[id] = c;
        }
        table_[key(pa, ia, pb, ib)] = coords;
        if (table_.find(key(pb, ib, pa, ia)) == table_.end()) table_[key(pb, ib, pa, ia)] = std::move(coords);
    }

    void set_todd(const std::map<std::string, Rat>& coords) { todd_ = make_class(coords); }
    const GradedClass& todd() const { return todd_; }

    GradedClass zero() const { return GradedClass(*this); }

    GradedClass basis_class(int degree, std::size_t index) const {
        GradedClass g(*this);
        g.coord(degree, index) = UniPoly(Rat(1));
        return g;
    }
    GradedClass one() const { return basis_class(0, 0); }
    GradedClass point() const { return basis_class(dim_, 0); }

    GradedClass make_class(const std::map<std::string, Rat>& coords) const {
        GradedClass g(*this);
        for (const auto& [nm, c] : coords) {
            auto [d, i] = locate(nm);
            g.coord(d, i) = UniPoly(c);
        }
        return g;
    }
    GradedClass make_divisor(const std::vector<Rat>& deg1_coords) const {
        GradedClass g(*this);
        if (deg1_coords.size() != basis_size(1)) throw std::invalid_argument("wrong divisor coordinate count");
        for (std::size_t i = 0; i < deg1_coords.size(); ++i) g.coord(1, i) = UniPoly(deg1_coords[i]);
        return g;
    }

    std::pair<int, std::size_t> locate(const std::string& nm) const {
        auto it = index_.find(nm);
        if (it == index_.end()) throw std::invalid_argument("unknown basis element: " + nm);
        return it->second;
    }

    GradedClass multiply(const GradedClass& a, const GradedClass& b) const {
        if (&a.model() != this || &b.model() != this)
            throw std::invalid_argument("classes from different models");
        GradedClass out(*this);
        for (int p = 0; p <= dim_; ++p)
            for (std::size_t i = 0; i < basis_size(p); ++i) {
                const UniPoly& ca = a.coord(p, i);
                if (ca.is_zero()) continue;
                for (int q = 0; p + q <= dim_; ++q)
                    for (std::size_t j = 0; j < basis_size(q); ++j) {
                        const UniPoly& cb = b.coord(q, j);
                        if (cb.is_zero()) continue;
                        const std::vector<Rat>& prod = structure(p, i, q, j);
                        UniPoly f = ca * cb;
                        for (std::size_t t = 0; t < prod.size(); ++t)
                            if (prod[t] != 0) out.coord(p + q, t) += f * prod[t];
                    }
            }
        return out;
    }

    /// Top-degree pairing: the coefficient of the point class.
    UniPoly integrate(const GradedClass& a) const { return a.coord(dim_, 0); }

    UniPoly power_integral(const GradedClass& divisor, int n) const {
        GradedClass acc = one();
        for (int i = 0; i < n; ++i) acc = multiply(acc, divisor);
        return integrate(acc);
    }

    /// vol(L) = integral of c1(L)^dim.
    Rat volume(const DivisorClass& L) const {
        UniPoly v = power_integral(L.cls, dim_);
        if (!v.is_constant()) throw std::logic_error("parameter-dependent volume");
        return v.constant_term();
    }

    /// exp of a divisor class, truncated at the top degree.
    GradedClass exp_class(const GradedClass& divisor) const {
        GradedClass acc = one(), term = one();
        Rat fact(1);
        for (int i = 1; i <= dim_; ++i) {
            term = multiply(term, divisor);
            fact *= i;
            acc += term * UniPoly(Rat(1) / fact);
        }
        return acc;
    }

    /// e^{k c1(L)} as a polynomial in k with class coefficients.
    std::vector<GradedClass> exp_divisor(const DivisorClass& L) const {
        std::vector<GradedClass> out;
        GradedClass term = one();
        Rat fact(1);
        out.push_back(term);
        for (int i = 1; i <= dim_; ++i) {
            term = multiply(term, L.cls);
            fact *= i;
            out.push_back(term * UniPoly(Rat(1) / fact));
        }
        return out;
    }

    std::vector<ModelViolation> validate() const {
        std::vector<ModelViolation> out;
        auto nm = [&](int d, std::size_t i) { return basis_[static_cast<std::size_t>(d)][i]; };
        struct Elem {
            int d;
            std::size_t i;
        };
        std::vector<Elem> elems;
        for (int d = 0; d <= dim_; ++d)
            for (std::size_t i = 0; i < basis_size(d); ++i) elems.push_back({d, i});
        for (const auto& a : elems) {
            GradedClass ca = basis_class(a.d, a.i);
            if (!(multiply(one(), ca) == ca))
                out.push_back({"identity", "1 * " + nm(a.d, a.i) + " != " + nm(a.d, a.i)});
            for (const auto& b : elems) {
                GradedClass ab = multiply(basis_class(a.d, a.i), basis_class(b.d, b.i));
                GradedClass ba = multiply(basis_class(b.d, b.i), basis_class(a.d, a.i));
                if (!(ab == ba))
                    out.push_back({"commutativity", nm(a.d, a.i) + " * " + nm(b.d, b.i)});
                for (const auto& c : elems) {
                    if (a.d + b.d + c.d > dim_) continue;
                    GradedClass l = multiply(ab, basis_class(c.d, c.i));
                    GradedClass r = multiply(basis_class(a.d, a.i), multiply(basis_class(b.d, b.i), basis_class(c.d, c.i)));
                    if (!(l == r))
                        out.push_back({"associativity",
                                       nm(a.d, a.i) + " * " + nm(b.d, b.i) + " * " + nm(c.d, c.i)});
                }
            }
        }
        if (!(integrate(point()) == UniPoly(Rat(1))))
            out.push_back({"normalization", "point class must integrate to 1"});
        if (todd_.empty() || !(todd_.component(0) == one()))
            out.push_back({"normalization", "Todd class must start with 1"});
        return out;
    }

  private:
    std::string name_;
    int dim_;
    std::vector<std::vector<std::string>> basis_;
    std::map<std::string, std::pair<int, std::size_t>> index_;
    std::map<std::string, std::vector<Rat>> table_;
    GradedClass todd_;

    static std::string key(int p, std::size_t i, int q, std::size_t j) {
        return std::to_string(p) + "," + std::to_string(i) + ":" + std::to_string(q) + "," + std::to_string(j);
    }
    const std::vector<Rat>& structure(int p, std::size_t i, int q, std::size_t j) const {
        static const std::vector<Rat> empty;
        if (p == 0) {
            // identity row is implicit
            thread_local std::vector<Rat> unit;
            unit.assign(basis_size(q), Rat(0));
            unit[j] = Rat(1);
            return unit;
        }
        if (q == 0) return structure(q, j, p, i);
        auto it = table_.find(key(p, i, q, j));
        if (it != table_.end()) return it->second;
        if (p + q <= dim_) {
            thread_local std::vector<Rat> zero;
            zero.assign(basis_size(p + q), Rat(0));
            return zero;
        }
        return empty;
    }
};

inline GradedClass::GradedClass(const NumericalModel& m) : model_(&m) {
    comps_.resize(static_cast<std::size_t>(m.dim()) + 1);
    for (int d = 0; d <= m.dim(); ++d)
        comps_[static_cast<std::size_t>(d)].assign(m.basis_size(d), UniPoly());
}

inline std::string GradedClass::str() const {
    if (empty()) return "0";
    std::string out;
    for (int d = 0; d <= model().dim(); ++d)
        for (std::size_t i = 0; i < model().basis_size(d); ++i) {
            const UniPoly& c = coord(d, i);
            if (c.is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")*" + model().basis()[static_cast<std::size_t>(d)][i];
        }
    return out.empty() ? "0" : out;
}

inline GradedClass multiply(const GradedClass& a, const GradedClass& b) {
    return a.model().multiply(a, b);
}
inline UniPoly integrate(const GradedClass& a) { return a.model().integrate(a); }

/// Built-in example models. Each lives for the program duration.
namespace models {

inline const NumericalModel& p2() {
    static const NumericalModel m = [] {
        NumericalModel m("p2", 2, {{"1"}, {"h"}, {"pt"}});
        m.set_product("h", "h", {{"pt", Rat(1)}});
        m.set_product("h", "pt", {});
        m.set_product("pt", "pt", {});
        m.set_todd({{"1", Rat(1)}, {"h", Rat(3, 2)}, {"pt", Rat(1)}});
        return m;
    }();
    return m;
}

inline const NumericalModel& p1p1() {
    static const NumericalModel m = [] {
        NumericalModel m("p1p1", 2, {{"1"}, {"h1", "h2"}, {"pt"}});
        m.set_product("h1", "h1", {});
        m.set_product("h2", "h2", {});
        m.set_product("h1", "h2", {{"pt", Rat(1)}});
        m.set_todd({{"1", Rat(1)}, {"h1", Rat(1)}, {"h2", Rat(1)}, {"pt", Rat(1)}});
        return m;
    }();
    return m;
}

inline const NumericalModel& p1p2() {
    static const NumericalModel m = [] {
        NumericalModel m("p1p2", 3, {{"1"}, {"h1", "h2"}, {"h1h2", "h2^2"}, {"pt"}});
        m.set_product("h1", "h1", {});
        m.set_product("h1", "h2", {{"h1h2", Rat(1)}});
        m.set_product("h2", "h2", {{"h2^2", Rat(1)}});
        m.set_product("h1", "h1h2", {});
        m.set_product("h1", "h2^2", {{"pt", Rat(1)}});
        m.set_product("h2", "h1h2", {{"pt", Rat(1)}});
        m.set_product("h2", "h2^2", {});
        // Todd(P1 x P2) = (1 + h1)(1 + (3/2)h2 + h2^2)
        m.set_todd({{"1", Rat(1)},
                    {"h1", Rat(1)},
                    {"h2", Rat(3, 2)},
                    {"h1h2", Rat(3, 2)},
                    {"h2^2", Rat(1)},
                    {"pt", Rat(1)}});
        return m;
    }();
    return m;
}

inline const NumericalModel* builtin(const std::string& name) {
    if (name == "p2") return &p2();
    if (name == "p1p1") return &p1p1();
    if (name == "p1p2") return &p1p2();
    return nullptr;
}

}  // namespace models

}  // namespace mgs

#endif

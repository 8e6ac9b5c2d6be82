#pragma once

#include <stdexcept>
#include <vector>

#include "space.hpp"

namespace elab {

// A structure-preserving map between finite spaces: total table, checked at
// construction. For Meas this is measurability (points in the same atom land
// in the same atom, so preimages of measurable sets are measurable); for Top
// it is continuity (monotone for the specialization preorders, which is the
// same thing on finite spaces).
class BaseMap {
public:
    BaseMap(FinSpace dom, FinSpace cod, std::vector<int> table)
        : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
        if ((int)table_.size() != dom_.size()) throw std::invalid_argument("map table size mismatch");
        if (dom_.kind() != cod_.kind()) throw std::invalid_argument("map between mixed space kinds");
        for (int v : table_)
            if (v < 0 || v >= cod_.size()) throw std::invalid_argument("map table value out of range");
        if (dom_.kind() == Kind::Meas) {
            for (int x = 0; x < dom_.size(); ++x)
                for (int y = x + 1; y < dom_.size(); ++y)
                    if (dom_.atom_of(x) == dom_.atom_of(y) &&
                        cod_.atom_of(table_[x]) != cod_.atom_of(table_[y]))
                        throw std::invalid_argument("table is not measurable: atom " +
                                                    dom_.set_label(dom_.atom(dom_.atom_of(x))) +
                                                    " split across codomain atoms");
        } else if (dom_.kind() == Kind::Top) {
            for (int y = 0; y < dom_.size(); ++y)
                for (int x : dom_.down(y).members())
                    if (!cod_.below(table_[x], table_[y]))
                        throw std::invalid_argument("table is not continuous at " + dom_.label(x) +
                                                    " <= " + dom_.label(y));
        }
    }

    static BaseMap identity(const FinSpace& x) {
        std::vector<int> t(x.size());
        for (int i = 0; i < x.size(); ++i) t[i] = i;
        return BaseMap(x, x, std::move(t));
    }

    static BaseMap constant(const FinSpace& dom, const FinSpace& cod, int value) {
        return BaseMap(dom, cod, std::vector<int>(dom.size(), value));
    }

    const FinSpace& dom() const { return dom_; }
    const FinSpace& cod() const { return cod_; }
    const std::vector<int>& table() const { return table_; }
    int operator()(int x) const { return table_.at(x); }

    Bits image() const {
        Bits b(cod_.size());
        for (int v : table_) b.set(v);
        return b;
    }
    Bits preimage(const Bits& s) const {
        Bits b(dom_.size());
        for (int x = 0; x < dom_.size(); ++x)
            if (s.test(table_[x])) b.set(x);
        return b;
    }

    bool operator==(const BaseMap& o) const {
        return dom_ == o.dom_ && cod_ == o.cod_ && table_ == o.table_;
    }
    bool operator!=(const BaseMap& o) const { return !(*this == o); }

private:
    FinSpace dom_, cod_;
    std::vector<int> table_;
};

// g after f.
inline BaseMap compose(const BaseMap& g, const BaseMap& f) {
    if (f.cod() != g.dom()) throw std::invalid_argument("compose: domain/codomain mismatch");
    std::vector<int> t(f.dom().size());
    for (int x = 0; x < f.dom().size(); ++x) t[x] = g(f(x));
    return BaseMap(f.dom(), g.cod(), std::move(t));
}

inline bool equal_maps(const BaseMap& f, const BaseMap& g) { return f == g; }

inline BaseMap proj1(const FinSpace& x, const FinSpace& y) {
    FinSpace xy = product_space(x, y);
    std::vector<int> t(xy.size());
    for (int p = 0; p < xy.size(); ++p) t[p] = unpair_index(y, p).first;
    return BaseMap(xy, x, std::move(t));
}

inline BaseMap proj2(const FinSpace& x, const FinSpace& y) {
    FinSpace xy = product_space(x, y);
    std::vector<int> t(xy.size());
    for (int p = 0; p < xy.size(); ++p) t[p] = unpair_index(y, p).second;
    return BaseMap(xy, y, std::move(t));
}

// Pairing <f,g> : Z -> X x Y of f : Z -> X and g : Z -> Y.
inline BaseMap pairing(const BaseMap& f, const BaseMap& g) {
    if (f.dom() != g.dom()) throw std::invalid_argument("pairing: domain mismatch");
    FinSpace xy = product_space(f.cod(), g.cod());
    std::vector<int> t(f.dom().size());
    for (int z = 0; z < f.dom().size(); ++z) t[z] = pair_index(g.cod(), f(z), g(z));
    return BaseMap(f.dom(), xy, std::move(t));
}

inline BaseMap swap_map(const FinSpace& x, const FinSpace& y) {
    FinSpace xy = product_space(x, y), yx = product_space(y, x);
    std::vector<int> t(xy.size());
    for (int p = 0; p < xy.size(); ++p) {
        auto [i, j] = unpair_index(y, p);
        t[p] = pair_index(x, j, i);
    }
    return BaseMap(xy, yx, std::move(t));
}

// (X x Y) x Z -> X x (Y x Z)
inline BaseMap assoc_map(const FinSpace& x, const FinSpace& y, const FinSpace& z) {
    FinSpace xy = product_space(x, y), yz = product_space(y, z);
    FinSpace l = product_space(xy, z), r = product_space(x, yz);
    std::vector<int> t(l.size());
    for (int p = 0; p < l.size(); ++p) {
        auto [ij, k] = unpair_index(z, p);
        auto [i, j] = unpair_index(y, ij);
        t[p] = pair_index(yz, i, pair_index(z, j, k));
    }
    return BaseMap(l, r, std::move(t));
}

// 1 x X -> X and X x 1 -> X.
inline BaseMap lunit_map(const FinSpace& x) {
    FinSpace ox = product_space(unit_space(x.kind()), x);
    std::vector<int> t(ox.size());
    for (int p = 0; p < ox.size(); ++p) t[p] = unpair_index(x, p).second;
    return BaseMap(ox, x, std::move(t));
}
inline BaseMap runit_map(const FinSpace& x) {
    FinSpace xo = product_space(x, unit_space(x.kind()));
    std::vector<int> t(xo.size());
    for (int p = 0; p < xo.size(); ++p) t[p] = unpair_index(unit_space(x.kind()), p).first;
    return BaseMap(xo, x, std::move(t));
}

// All structure-preserving maps dom -> cod, in lexicographic table order.
// Exponential; callers guard carrier sizes.
inline std::vector<BaseMap> all_base_maps(const FinSpace& dom, const FinSpace& cod) {
    std::vector<BaseMap> out;
    long long total = 1;
    for (int i = 0; i < dom.size(); ++i) {
        total *= cod.size();
        if (total > 2'000'000) throw std::length_error("base-map enumeration too large");
    }
    std::vector<int> t(dom.size(), 0);
    if (dom.size() == 0) {
        out.emplace_back(dom, cod, t);
        return out;
    }
    while (true) {
        try {
            out.emplace_back(dom, cod, t);
        } catch (const std::invalid_argument&) {
            // not structure-preserving; skip
        }
        int k = dom.size() - 1;
        while (k >= 0 && ++t[k] == cod.size()) t[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

} // namespace elab

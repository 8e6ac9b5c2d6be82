#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"

namespace elab {

enum class Kind { Set, Meas, Top };

inline std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Set: return "set";
        case Kind::Meas: return "meas";
        case Kind::Top: return "top";
    }
    return "?";
}

// Smallest algebra (complement/union) or topology (union/intersection)
// containing the generators, by fixed-point iteration. Finite sigma-algebras
// coincide with algebras of sets, so closing under complement and binary
// union is the whole completion.
inline std::vector<Bits> complete_structure(int npoints, std::vector<Bits> generators, Kind kind) {
    if (kind == Kind::Set) throw std::invalid_argument("plain sets carry no structure to complete");
    std::set<Bits> fam;
    fam.insert(Bits(npoints));
    fam.insert(Bits::full(npoints));
    for (auto& g : generators) {
        if (g.universe() != npoints) throw std::invalid_argument("generator over wrong carrier");
        fam.insert(g);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Bits> cur(fam.begin(), fam.end());
        for (const auto& a : cur) {
            if (kind == Kind::Meas && fam.insert(a.complement()).second) grew = true;
            for (const auto& b : cur) {
                if (fam.insert(a | b).second) grew = true;
                if (kind == Kind::Top && fam.insert(a & b).second) grew = true;
            }
        }
    }
    return {fam.begin(), fam.end()};
}

// A finite carrier with optional structure: nothing (Set), an algebra of
// subsets stored as its atom partition (Meas), or a topology stored as the
// closure-of-point table (Top). Both compressed forms determine and are
// determined by the full family, which complete_structure / family() can
// materialize for small carriers; derived spaces (products, powers, lower
// Vietoris spaces) would blow up as explicit families but stay tiny in the
// compressed form.
class FinSpace {
public:
    FinSpace() : kind_(Kind::Set) {}

    static FinSpace make_set(std::vector<std::string> labels) {
        FinSpace s;
        s.kind_ = Kind::Set;
        s.labels_ = std::move(labels);
        s.check_labels();
        return s;
    }

    static FinSpace make_meas(std::vector<std::string> labels, const std::vector<Bits>& generators) {
        FinSpace s;
        s.kind_ = Kind::Meas;
        s.labels_ = std::move(labels);
        s.check_labels();
        int n = s.size();
        // Atoms of the generated algebra are the classes of "same membership
        // pattern across generators".
        std::map<std::vector<bool>, int> pat;
        s.atom_of_.assign(n, -1);
        for (int x = 0; x < n; ++x) {
            std::vector<bool> key;
            key.reserve(generators.size());
            for (const auto& g : generators) {
                if (g.universe() != n) throw std::invalid_argument("generator over wrong carrier");
                key.push_back(g.test(x));
            }
            auto [it, fresh] = pat.emplace(key, (int)pat.size());
            (void)fresh;
            s.atom_of_[x] = it->second;
        }
        s.atoms_.assign(pat.size(), Bits(n));
        for (int x = 0; x < n; ++x) s.atoms_[s.atom_of_[x]].set(x);
        s.canonicalize_atoms();
        return s;
    }

    static FinSpace make_top(std::vector<std::string> labels, const std::vector<Bits>& generators) {
        FinSpace s;
        s.kind_ = Kind::Top;
        s.labels_ = std::move(labels);
        s.check_labels();
        int n = s.size();
        // x is in cl{y} iff every generating open containing x contains y.
        s.down_.assign(n, Bits(n));
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                bool below = true;
                for (const auto& g : generators) {
                    if (g.universe() != n) throw std::invalid_argument("generator over wrong carrier");
                    if (g.test(x) && !g.test(y)) { below = false; break; }
                }
                if (below) s.down_[y].set(x);
            }
        return s;
    }

    static FinSpace discrete(Kind kind, std::vector<std::string> labels) {
        int n = (int)labels.size();
        std::vector<Bits> gens;
        for (int i = 0; i < n; ++i) gens.push_back(Bits::single(n, i));
        switch (kind) {
            case Kind::Set: return make_set(std::move(labels));
            case Kind::Meas: return make_meas(std::move(labels), gens);
            case Kind::Top: return make_top(std::move(labels), gens);
        }
        throw std::logic_error("bad kind");
    }

    // Constructs a Meas space directly from an atom partition, or a Top space
    // directly from per-point closures. Used by derived-space builders.
    static FinSpace from_atoms(std::vector<std::string> labels, std::vector<int> atom_of) {
        FinSpace s;
        s.kind_ = Kind::Meas;
        s.labels_ = std::move(labels);
        s.check_labels();
        s.atom_of_ = std::move(atom_of);
        int na = 0;
        for (int a : s.atom_of_) na = std::max(na, a + 1);
        s.atoms_.assign(na, Bits(s.size()));
        for (int x = 0; x < s.size(); ++x) s.atoms_[s.atom_of_[x]].set(x);
        for (const auto& a : s.atoms_)
            if (a.empty()) throw std::invalid_argument("empty atom in partition");
        s.canonicalize_atoms();
        return s;
    }

    static FinSpace from_down(std::vector<std::string> labels, std::vector<Bits> down) {
        FinSpace s;
        s.kind_ = Kind::Top;
        s.labels_ = std::move(labels);
        s.check_labels();
        s.down_ = std::move(down);
        int n = s.size();
        if ((int)s.down_.size() != n) throw std::invalid_argument("closure table size mismatch");
        for (int y = 0; y < n; ++y) {
            if (!s.down_[y].test(y)) throw std::invalid_argument("closure table not reflexive");
            for (int x : s.down_[y].members())
                if (!s.down_[x].subset_of(s.down_[y]))
                    throw std::invalid_argument("closure table not transitive");
        }
        return s;
    }

    Kind kind() const { return kind_; }
    int size() const { return (int)labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(i); }

    int point(const std::string& lbl) const {
        for (int i = 0; i < size(); ++i)
            if (labels_[i] == lbl) return i;
        throw std::out_of_range("unknown point '" + lbl + "'");
    }
    bool has_point(const std::string& lbl) const {
        for (const auto& l : labels_)
            if (l == lbl) return true;
        return false;
    }

    // --- measurable structure ---
    int atom_count() const { require(Kind::Meas); return (int)atoms_.size(); }
    int atom_of(int x) const { require(Kind::Meas); return atom_of_.at(x); }
    const Bits& atom(int a) const { require(Kind::Meas); return atoms_.at(a); }
    const std::vector<Bits>& atoms() const { require(Kind::Meas); return atoms_; }
    int atom_rep(int a) const { require(Kind::Meas); return atoms_.at(a).members().front(); }
    bool measurable(const Bits& s) const {
        require(Kind::Meas);
        for (const auto& a : atoms_)
            if (a.intersects(s) && !a.subset_of(s)) return false;
        return true;
    }

    // --- topological structure ---
    const Bits& down(int x) const { require(Kind::Top); return down_.at(x); }
    // x <= y in the specialization preorder, i.e. x in cl{y}.
    bool below(int x, int y) const { require(Kind::Top); return down_.at(y).test(x); }
    Bits closure(const Bits& s) const {
        require(Kind::Top);
        Bits r(size());
        for (int x : s.members()) r = r | down_[x];
        return r;
    }
    bool closed(const Bits& s) const {
        require(Kind::Top);
        return closure(s) == s;
    }
    bool open(const Bits& s) const {
        require(Kind::Top);
        return closed(s.complement());
    }
    // All closed sets, in canonical order. Exponential in the worst case;
    // intended for the small spaces this library works with.
    std::vector<Bits> closed_sets() const {
        require(Kind::Top);
        int n = size();
        if (n > 20) throw std::length_error("closed-set enumeration over large carrier");
        std::vector<Bits> out;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            Bits s(n);
            for (int i = 0; i < n; ++i)
                if ((m >> i) & 1) s.set(i);
            if (closed(s)) out.push_back(s);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // The full structure family: all measurable sets, or all open sets.
    std::vector<Bits> family() const {
        int n = size();
        if (kind_ == Kind::Meas) {
            if (atom_count() > 20) throw std::length_error("family over too many atoms");
            std::vector<Bits> out;
            int na = atom_count();
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << na); ++m) {
                Bits s(n);
                for (int a = 0; a < na; ++a)
                    if ((m >> a) & 1) s = s | atoms_[a];
                out.push_back(s);
            }
            std::sort(out.begin(), out.end());
            return out;
        }
        if (kind_ == Kind::Top) {
            auto cs = closed_sets();
            std::vector<Bits> out;
            out.reserve(cs.size());
            for (const auto& c : cs) out.push_back(c.complement());
            std::sort(out.begin(), out.end());
            return out;
        }
        throw std::invalid_argument("plain set has no structure family");
    }

    std::string set_label(const Bits& s) const {
        std::string out = "{";
        bool first = true;
        for (int i : s.members()) {
            if (!first) out += ",";
            out += labels_[i];
            first = false;
        }
        return out + "}";
    }

    bool operator==(const FinSpace& o) const {
        return kind_ == o.kind_ && labels_ == o.labels_ && atom_of_ == o.atom_of_ && down_ == o.down_;
    }
    bool operator!=(const FinSpace& o) const { return !(*this == o); }

private:
    void require(Kind k) const {
        if (kind_ != k)
            throw std::invalid_argument("space '" + (labels_.empty() ? std::string("?") : labels_[0]) +
                                        "...' lacks " + kind_name(k) + " structure");
    }
    void check_labels() const {
        std::set<std::string> seen;
        for (const auto& l : labels_)
            if (!seen.insert(l).second) throw std::invalid_argument("duplicate point label '" + l + "'");
    }
    // Reorder atoms by their canonical Bits order so outputs are reproducible.
    void canonicalize_atoms() {
        std::vector<int> order(atoms_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return atoms_[a] < atoms_[b]; });
        std::vector<int> rank(order.size());
        for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = (int)i;
        std::vector<Bits> na(atoms_.size(), Bits(size()));
        for (size_t i = 0; i < order.size(); ++i) na[i] = atoms_[order[i]];
        atoms_ = std::move(na);
        for (auto& a : atom_of_) a = rank[a];
    }

    Kind kind_;
    std::vector<std::string> labels_;
    std::vector<int> atom_of_; // Meas
    std::vector<Bits> atoms_;  // Meas
    std::vector<Bits> down_;   // Top: down_[y] = cl{y}
};

// Minimal nonempty measurable sets; they partition the carrier and every
// measurable set is a union of them.
inline std::vector<Bits> atoms(const FinSpace& x) { return x.atoms(); }

inline Bits closure(const Bits& s, const FinSpace& x) { return x.closure(s); }

namespace detail {
inline std::string pair_label(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}
}

// Binary product: carrier of pairs in row-major order, structure generated by
// rectangles. Atoms of the product algebra are products of atoms; closures of
// product points are products of closures.
inline FinSpace product_space(const FinSpace& x, const FinSpace& y) {
    if (x.kind() != y.kind()) throw std::invalid_argument("product of mixed space kinds");
    int nx = x.size(), ny = y.size(), n = nx * ny;
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) labels.push_back(detail::pair_label(x.label(i), y.label(j)));
    switch (x.kind()) {
        case Kind::Set:
            return FinSpace::make_set(std::move(labels));
        case Kind::Meas: {
            std::vector<int> atom_of(n);
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j)
                    atom_of[i * ny + j] = x.atom_of(i) * y.atom_count() + y.atom_of(j);
            return FinSpace::from_atoms(std::move(labels), std::move(atom_of));
        }
        case Kind::Top: {
            std::vector<Bits> down(n, Bits(n));
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j) {
                    Bits d(n);
                    for (int a : x.down(i).members())
                        for (int b : y.down(j).members()) d.set(a * ny + b);
                    down[i * ny + j] = d;
                }
            return FinSpace::from_down(std::move(labels), std::move(down));
        }
    }
    throw std::logic_error("bad kind");
}

inline int pair_index(const FinSpace& y, int i, int j) { return i * y.size() + j; }
inline std::pair<int, int> unpair_index(const FinSpace& y, int p) { return {p / y.size(), p % y.size()}; }

inline FinSpace unit_space(Kind kind) {
    std::vector<std::string> l{"*"};
    switch (kind) {
        case Kind::Set: return FinSpace::make_set(l);
        case Kind::Meas: return FinSpace::make_meas(l, {});
        case Kind::Top: return FinSpace::make_top(l, {});
    }
    throw std::logic_error("bad kind");
}

// n-fold power X^n: tuples in lexicographic order (first coordinate most
// significant). X^0 is the unit space and X^1 is X itself.
inline FinSpace power_space(const FinSpace& x, int n) {
    if (n < 0) throw std::invalid_argument("negative power");
    if (n == 0) return unit_space(x.kind());
    if (n == 1) return x;
    int nx = x.size();
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        total *= nx;
        if (total > 1'000'000) throw std::length_error("power space too large");
    }
    int ntot = (int)total;
    std::vector<std::vector<int>> tuples(ntot, std::vector<int>(n));
    for (int p = 0; p < ntot; ++p) {
        int rem = p;
        for (int k = n - 1; k >= 0; --k) {
            tuples[p][k] = rem % nx;
            rem /= nx;
        }
    }
    std::vector<std::string> labels(ntot);
    for (int p = 0; p < ntot; ++p) {
        std::string l = "(";
        for (int k = 0; k < n; ++k) {
            if (k) l += ",";
            l += x.label(tuples[p][k]);
        }
        labels[p] = l + ")";
    }
    switch (x.kind()) {
        case Kind::Set:
            return FinSpace::make_set(std::move(labels));
        case Kind::Meas: {
            std::vector<int> atom_of(ntot);
            for (int p = 0; p < ntot; ++p) {
                int a = 0;
                for (int k = 0; k < n; ++k) a = a * x.atom_count() + x.atom_of(tuples[p][k]);
                atom_of[p] = a;
            }
            return FinSpace::from_atoms(std::move(labels), std::move(atom_of));
        }
        case Kind::Top: {
            std::vector<Bits> down(ntot, Bits(ntot));
            for (int p = 0; p < ntot; ++p) {
                std::vector<std::vector<int>> mem(n);
                for (int k = 0; k < n; ++k) mem[k] = x.down(tuples[p][k]).members();
                Bits d(ntot);
                std::vector<int> idx(n, 0);
                while (true) { // product of per-coordinate closures
                    int q = 0;
                    for (int k = 0; k < n; ++k) q = q * nx + mem[k][idx[k]];
                    d.set(q);
                    int k = n - 1;
                    while (k >= 0 && ++idx[k] == (int)mem[k].size()) idx[k--] = 0;
                    if (k < 0) break;
                }
                down[p] = d;
            }
            return FinSpace::from_down(std::move(labels), std::move(down));
        }
    }
    throw std::logic_error("bad kind");
}

inline int tuple_index(const FinSpace& x, const std::vector<int>& tup) {
    int p = 0;
    for (int c : tup) p = p * x.size() + c;
    return p;
}
inline std::vector<int> untuple_index(const FinSpace& x, int n, int p) {
    std::vector<int> tup(n);
    for (int k = n - 1; k >= 0; --k) {
        tup[k] = p % x.size();
        p /= x.size();
    }
    return tup;
}

// Carrier of the lower Vietoris space HX: the closed sets of X in canonical
// order, with the subset order as specialization (the lower Vietoris topology
// on a finite HX is exactly the Alexandrov topology of inclusion).
inline FinSpace lower_vietoris_space(const FinSpace& x) {
    auto cs = x.closed_sets();
    int n = (int)cs.size();
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = x.set_label(cs[i]);
    std::vector<Bits> down(n, Bits(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cs[j].subset_of(cs[i])) down[i].set(j);
    return FinSpace::from_down(std::move(labels), std::move(down));
}

} // namespace elab

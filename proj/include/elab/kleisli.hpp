#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "basemap.hpp"
#include "monad.hpp"

namespace elab {

// A Kleisli morphism A ~> B: a total table from points of A to elements of
// TB. For Giry/SubGiry the table must be constant on atoms of A (that is what
// measurability of x |-> k(B|x) means here); for Hoare it must be continuous
// into the lower Vietoris space, i.e. monotone for inclusion.
class KleisliMorphism {
public:
    KleisliMorphism(const Monad& m, FinSpace dom, FinSpace cod, std::vector<TElem> table)
        : m_(&m), dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
        if ((int)table_.size() != dom_.size()) throw std::invalid_argument("kernel table size mismatch");
        for (const auto& e : table_) m.validate(cod_, e);
        if (m.id() == MonadId::Giry || m.id() == MonadId::SubGiry) {
            for (int x = 0; x < dom_.size(); ++x)
                if (!(table_[x] == table_[dom_.atom_rep(dom_.atom_of(x))]))
                    throw std::invalid_argument("kernel not measurable: differs inside atom " +
                                                dom_.set_label(dom_.atom(dom_.atom_of(x))));
        } else if (m.id() == MonadId::Hoare) {
            for (int y = 0; y < dom_.size(); ++y)
                for (int x : dom_.down(y).members())
                    if (!std::get<ClosedSet>(table_[x]).s.subset_of(std::get<ClosedSet>(table_[y]).s))
                        throw std::invalid_argument("kernel not continuous at " + dom_.label(x) +
                                                    " <= " + dom_.label(y));
        }
    }

    const Monad& monad() const { return *m_; }
    const FinSpace& dom() const { return dom_; }
    const FinSpace& cod() const { return cod_; }
    const std::vector<TElem>& table() const { return table_; }
    const TElem& operator()(int x) const { return table_.at(x); }

    bool operator==(const KleisliMorphism& o) const {
        return m_ == o.m_ && dom_ == o.dom_ && cod_ == o.cod_ && table_ == o.table_;
    }
    bool operator!=(const KleisliMorphism& o) const { return !(*this == o); }

private:
    const Monad* m_;
    FinSpace dom_, cod_;
    std::vector<TElem> table_;
};

// eta . g for a base map g.
inline KleisliMorphism pure_morphism(const Monad& m, const BaseMap& g) {
    std::vector<TElem> t;
    t.reserve(g.dom().size());
    for (int x = 0; x < g.dom().size(); ++x) t.push_back(m.eta(g.cod(), g(x)));
    return KleisliMorphism(m, g.dom(), g.cod(), std::move(t));
}

inline KleisliMorphism kleisli_identity(const Monad& m, const FinSpace& x) {
    return pure_morphism(m, BaseMap::identity(x));
}

// h after k (Chapman-Kolmogorov composition).
inline KleisliMorphism kleisli_compose(const KleisliMorphism& h, const KleisliMorphism& k) {
    if (&h.monad() != &k.monad()) throw std::invalid_argument("compose across monads");
    if (k.cod() != h.dom()) throw std::invalid_argument("kleisli compose: boundary mismatch");
    std::vector<TElem> t;
    t.reserve(k.dom().size());
    for (int x = 0; x < k.dom().size(); ++x)
        t.push_back(h.monad().bind(h.dom(), h.cod(), k(x), h.table()));
    return KleisliMorphism(h.monad(), k.dom(), h.cod(), std::move(t));
}

// f (x) g : A x C ~> B x D, via the monoidal structure.
inline KleisliMorphism kleisli_tensor(const KleisliMorphism& f, const KleisliMorphism& g) {
    if (&f.monad() != &g.monad()) throw std::invalid_argument("tensor across monads");
    const Monad& m = f.monad();
    FinSpace dom = product_space(f.dom(), g.dom());
    FinSpace cod = product_space(f.cod(), g.cod());
    std::vector<TElem> t;
    t.reserve(dom.size());
    for (int p = 0; p < dom.size(); ++p) {
        auto [a, c] = unpair_index(g.dom(), p);
        t.push_back(m.nabla(f.cod(), g.cod(), f(a), g(c)));
    }
    return KleisliMorphism(m, std::move(dom), std::move(cod), std::move(t));
}

// CD structure: every object is a commutative comonoid via these two.
inline KleisliMorphism copy_morphism(const Monad& m, const FinSpace& x) {
    FinSpace xx = product_space(x, x);
    std::vector<TElem> t;
    t.reserve(x.size());
    for (int p = 0; p < x.size(); ++p) t.push_back(m.eta(xx, pair_index(x, p, p)));
    return KleisliMorphism(m, x, std::move(xx), std::move(t));
}

inline KleisliMorphism del_morphism(const Monad& m, const FinSpace& x) {
    FinSpace one = unit_space(x.kind());
    std::vector<TElem> t(x.size(), m.eta(one, 0));
    return KleisliMorphism(m, x, std::move(one), std::move(t));
}

// Precomputed element <-> point translation for a representable TX. The
// Hoare instance would otherwise re-enumerate closed sets on every embed.
class TSpaceIndex {
public:
    TSpaceIndex(const Monad& m, const FinSpace& x) : m_(&m), x_(x), tx_(m.tspace(x)) {
        if (m.id() == MonadId::Hoare) {
            cs_ = x.closed_sets();
            for (int i = 0; i < (int)cs_.size(); ++i) idx_[cs_[i]] = i;
        }
    }
    const FinSpace& base() const { return x_; }
    const FinSpace& tspace() const { return tx_; }
    int embed(const TElem& e) const {
        if (m_->id() == MonadId::Hoare) return idx_.at(std::get<ClosedSet>(e).s);
        return m_->embed(x_, e);
    }
    TElem extract(int t) const {
        if (m_->id() == MonadId::Hoare) return ClosedSet{cs_.at(t)};
        return m_->extract(x_, t);
    }

private:
    const Monad* m_;
    FinSpace x_, tx_;
    std::vector<Bits> cs_;
    std::map<Bits, int> idx_;
};

// Thunk-force structure for the representable instances, where TA is a
// literal finite space. thunk_A : A ~> TA freezes, force_A : TA ~> A runs.
inline KleisliMorphism thunk_morphism(const Monad& m, const FinSpace& a) {
    TSpaceIndex ix(m, a);
    std::vector<TElem> t;
    t.reserve(a.size());
    for (int p = 0; p < a.size(); ++p) t.push_back(m.eta(ix.tspace(), ix.embed(m.eta(a, p))));
    return KleisliMorphism(m, a, ix.tspace(), std::move(t));
}

inline KleisliMorphism force_morphism(const Monad& m, const FinSpace& a) {
    TSpaceIndex ix(m, a);
    std::vector<TElem> t;
    t.reserve(ix.tspace().size());
    for (int p = 0; p < ix.tspace().size(); ++p) t.push_back(ix.extract(p));
    return KleisliMorphism(m, ix.tspace(), a, std::move(t));
}

// L f : TA ~> TB, the endofunctor of the thunk-force structure applied to f.
inline KleisliMorphism L_morphism(const KleisliMorphism& f) {
    const Monad& m = f.monad();
    TSpaceIndex da(m, f.dom()), cb(m, f.cod());
    std::vector<TElem> t;
    t.reserve(da.tspace().size());
    for (int p = 0; p < da.tspace().size(); ++p) {
        TElem run = m.bind(f.dom(), f.cod(), da.extract(p), f.table());
        t.push_back(m.eta(cb.tspace(), cb.embed(run)));
    }
    return KleisliMorphism(m, da.tspace(), cb.tspace(), std::move(t));
}

// ----- classifiers -----

// All base maps g with eta . g = f#. Empty list: not pure. More than one
// witness: pure but not uniquely pure (eta identified some points).
inline std::vector<BaseMap> is_pure(const KleisliMorphism& f) {
    const Monad& m = f.monad();
    const FinSpace& x = f.dom();
    const FinSpace& y = f.cod();
    // candidate fibers of eta over each table entry
    std::vector<std::vector<int>> cand(x.size());
    for (int p = 0; p < x.size(); ++p) {
        for (int q = 0; q < y.size(); ++q)
            if (m.eta(y, q) == f(p)) cand[p].push_back(q);
        if (cand[p].empty()) return {};
    }
    std::vector<BaseMap> out;
    std::vector<int> pick(x.size(), 0);
    while (true) {
        std::vector<int> table(x.size());
        for (int p = 0; p < x.size(); ++p) table[p] = cand[p][pick[p]];
        try {
            out.emplace_back(x, y, table);
        } catch (const std::invalid_argument&) {
            // candidate table not structure-preserving
        }
        int k = x.size() - 1;
        while (k >= 0 && ++pick[k] == (int)cand[k].size()) pick[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

// f is thunkable iff eta(f#(x)) = (T eta)(f#(x)) for every point x, i.e. f#
// sits in the unit fork at its codomain.
inline bool is_thunkable(const KleisliMorphism& f) {
    for (int p = 0; p < f.dom().size(); ++p)
        if (!(f.monad().outer_eta(f.cod(), f(p)) == f.monad().outer_Teta(f.cod(), f(p))))
            return false;
    return true;
}

inline bool is_copyable(const KleisliMorphism& f) {
    KleisliMorphism lhs = kleisli_compose(copy_morphism(f.monad(), f.cod()), f);
    KleisliMorphism rhs = kleisli_compose(kleisli_tensor(f, f), copy_morphism(f.monad(), f.dom()));
    return lhs == rhs;
}

inline bool is_discardable(const KleisliMorphism& f) {
    KleisliMorphism lhs = kleisli_compose(del_morphism(f.monad(), f.cod()), f);
    return lhs == del_morphism(f.monad(), f.dom());
}

inline bool is_deterministic(const KleisliMorphism& f) {
    return is_copyable(f) && is_discardable(f);
}

struct Classification {
    std::vector<BaseMap> pure_witnesses;
    bool thunkable = false;
    bool copyable = false;
    bool discardable = false;
    bool deterministic = false;

    bool pure() const { return !pure_witnesses.empty(); }
    bool uniquely_pure() const { return pure_witnesses.size() == 1; }
};

// Runs the four classifiers and asserts the inclusion chain
// pure => thunkable => deterministic. A violation would mean a broken monad
// instance, so it is an internal error, not a report entry.
inline Classification classify(const KleisliMorphism& f) {
    Classification c;
    c.pure_witnesses = is_pure(f);
    c.thunkable = is_thunkable(f);
    c.copyable = is_copyable(f);
    c.discardable = is_discardable(f);
    c.deterministic = c.copyable && c.discardable;
    if (c.pure() && !c.thunkable) throw std::logic_error("inclusion chain violated: pure but not thunkable");
    if (c.thunkable && !c.deterministic)
        throw std::logic_error("inclusion chain violated: thunkable but not deterministic");
    return c;
}

// All Kleisli morphisms dom ~> cod for a representable instance. Exponential;
// callers guard carrier sizes.
inline std::vector<KleisliMorphism> all_kleisli(const Monad& m, const FinSpace& dom, const FinSpace& cod) {
    if (!m.representable()) throw std::invalid_argument("cannot enumerate kernels for " + m.name());
    FinSpace tc = m.tspace(cod);
    long long total = 1;
    for (int i = 0; i < dom.size(); ++i) {
        total *= tc.size();
        if (total > 2'000'000) throw std::length_error("kleisli enumeration too large");
    }
    std::vector<KleisliMorphism> out;
    std::vector<int> t(dom.size(), 0);
    if (dom.size() == 0) {
        out.emplace_back(m, dom, cod, std::vector<TElem>{});
        return out;
    }
    while (true) {
        std::vector<TElem> table;
        table.reserve(dom.size());
        for (int v : t) table.push_back(m.extract(cod, v));
        try {
            out.emplace_back(m, dom, cod, std::move(table));
        } catch (const std::invalid_argument&) {
            // not a valid kernel (e.g. discontinuous); skip
        }
        int k = dom.size() - 1;
        while (k >= 0 && ++t[k] == tc.size()) t[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

// Searches for a retraction r with r . g = id. Exhaustive over the finite
// Kleisli homset for representable instances; for the measure-style instances
// the homset is infinite, so only pure retractions are searched there.
inline std::optional<KleisliMorphism> find_retraction(const KleisliMorphism& g) {
    const Monad& m = g.monad();
    KleisliMorphism want = kleisli_identity(m, g.dom());
    if (m.representable()) {
        for (const auto& r : all_kleisli(m, g.cod(), g.dom()))
            if (kleisli_compose(r, g) == want) return r;
        return std::nullopt;
    }
    for (const auto& r0 : all_base_maps(g.cod(), g.dom())) {
        KleisliMorphism r = pure_morphism(m, r0);
        if (kleisli_compose(r, g) == want) return r;
    }
    return std::nullopt;
}

} // namespace elab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kleisli.hpp"
#include "laws.hpp"
#include "monad.hpp"
#include "report.hpp"

namespace elab {

// The equalizer object DX of the unit fork at X, with the equalizing
// injection theta : DX -> TX (stored pointwise as elements of TX) and the
// unit e : X -> DX. DX is computed by per-instance characterization of the
// fork solutions among represented elements, never by enumerating TX:
//   dist / maybe / reader : DX = X (the equalizing requirement holds),
//   giry                  : DX = atom space (zero-one probability measures),
//   subgiry               : DX = atom space as well; the zero measure fails
//                           the fork (eta(0) has outer mass 1, (T eta)(0) has
//                           mass 0), which reports surface explicitly,
//   hoare                 : DX = irreducible closed sets.
struct Sobrification {
    const Monad* monad;
    FinSpace x;
    FinSpace dx;
    std::vector<TElem> theta; // per point of dx, an element of TX
    std::vector<int> e_table; // X -> DX
    std::vector<std::string> notes;

    BaseMap e() const { return BaseMap(x, dx, e_table); }
};

inline bool fork_holds(const Monad& m, const FinSpace& x, const TElem& p) {
    return m.outer_eta(x, p) == m.outer_Teta(x, p);
}

// Checks the unit fork at X: eta_TX . eta = T(eta) . eta on points, plus the
// split-equalizer equations of the fork at TX for the representable
// instances (mu . eta = id, T(mu) . T(eta) = id, T(mu) . eta = eta . mu).
inline bool unit_fork_check(const Monad& m, const FinSpace& x, Report* rep = nullptr) {
    bool ok = true;
    std::string wit;
    for (int p = 0; p < x.size() && ok; ++p)
        if (!fork_holds(m, x, m.eta(x, p))) {
            ok = false;
            wit = "fork fails at eta(" + x.label(p) + ")";
        }
    bool split_ok = true;
    if (m.representable()) {
        TSpaceIndex tx(m, x);
        TSpaceIndex ttx(m, tx.tspace());
        BaseMap mu1 = mu_basemap(m, x);             // T(TX)-space -> TX-space
        for (int t = 0; t < tx.tspace().size() && split_ok; ++t) {
            TElem p = tx.extract(t);
            // mu . eta_TX = id
            if (!(m.mu(x, m.outer_eta(x, p)) == p)) split_ok = false;
            // T(mu) . T(eta) = id at TX: push p along eta then along mu
            TElem up = m.fmap(tx.tspace().kind() == Kind::Top ? m.eta_map(tx.tspace())
                                                              : m.eta_map(tx.tspace()),
                              p);
            if (!(m.fmap(mu1, up) == p)) split_ok = false;
        }
    }
    if (rep) {
        rep->add(m.name() + "/" + (x.size() ? x.label(0) : "") + ": unit fork commutes", ok, wit);
        if (m.representable())
            rep->add(m.name() + "/" + (x.size() ? x.label(0) : "") + ": split equalizer at TX", split_ok);
    }
    return ok && split_ok;
}

// C is irreducible: nonempty, and C <= A u B for closed A, B forces C <= A or
// C <= B. Quadratic in the number of closed sets; fine at this scale.
inline bool irreducible(const FinSpace& x, const Bits& c,
                        const std::vector<Bits>& closed_sets) {
    if (c.empty()) return false;
    for (const auto& a : closed_sets)
        for (const auto& b : closed_sets) {
            if (!c.subset_of(a | b)) continue;
            if (!c.subset_of(a) && !c.subset_of(b)) return false;
        }
    return true;
}

inline Sobrification sobrify(const Monad& m, const FinSpace& x) {
    Sobrification s;
    s.monad = &m;
    s.x = x;
    switch (m.id()) {
        case MonadId::Dist:
        case MonadId::Maybe:
        case MonadId::Reader: {
            s.dx = x;
            for (int p = 0; p < x.size(); ++p) {
                s.theta.push_back(m.eta(x, p));
                s.e_table.push_back(p);
            }
            break;
        }
        case MonadId::Giry:
        case MonadId::SubGiry: {
            // zero-one probability measures = atom deltas; discrete algebra
            // induced by the evaluation sets {d : theta(d)(A) = 1}
            int na = x.atom_count();
            std::vector<std::string> labels(na);
            for (int a = 0; a < na; ++a) labels[a] = x.set_label(x.atom(a));
            std::vector<int> atom_of(na);
            for (int a = 0; a < na; ++a) atom_of[a] = a;
            s.dx = FinSpace::from_atoms(std::move(labels), std::move(atom_of));
            for (int a = 0; a < na; ++a) s.theta.push_back(Measure{{{a, 1}}});
            for (int p = 0; p < x.size(); ++p) s.e_table.push_back(x.atom_of(p));
            if (m.subnormalized()) {
                bool zero_in = fork_holds(m, x, Measure{});
                s.notes.push_back(std::string("zero measure ") +
                                  (zero_in ? "satisfies" : "fails") +
                                  " the fork (eta(0) vs T(eta)(0)) and is " +
                                  (zero_in ? "included" : "excluded"));
            }
            break;
        }
        case MonadId::Hoare: {
            auto cs = x.closed_sets();
            std::vector<Bits> irr;
            for (const auto& c : cs)
                if (irreducible(x, c, cs)) irr.push_back(c);
            int n = (int)irr.size();
            std::vector<std::string> labels(n);
            for (int i = 0; i < n; ++i) labels[i] = x.set_label(irr[i]);
            std::vector<Bits> down(n, Bits(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (irr[j].subset_of(irr[i])) down[i].set(j);
            s.dx = FinSpace::from_down(std::move(labels), std::move(down));
            for (const auto& c : irr) s.theta.push_back(ClosedSet{c});
            for (int p = 0; p < x.size(); ++p) {
                int found = -1;
                for (int i = 0; i < n; ++i)
                    if (irr[i] == x.down(p)) { found = i; break; }
                if (found < 0) throw std::logic_error("point closure not irreducible");
                s.e_table.push_back(found);
            }
            break;
        }
    }
    return s;
}

// Transport of a thunkable morphism f : Y ~> Z to the base map DY -> DZ
// singled out by the universal property: theta_Z . Df = (f . theta_Y^flat)#.
inline BaseMap d_on_morphism(const KleisliMorphism& f, const Sobrification& sy,
                             const Sobrification& sz) {
    if (!is_thunkable(f)) throw std::invalid_argument("d_on_morphism: morphism is not thunkable");
    if (!(f.dom() == sy.x) || !(f.cod() == sz.x))
        throw std::invalid_argument("d_on_morphism: sobrification boundary mismatch");
    const Monad& m = f.monad();
    std::vector<int> table(sy.dx.size(), -1);
    for (int d = 0; d < sy.dx.size(); ++d) {
        TElem img = m.bind(f.dom(), f.cod(), sy.theta[d], f.table());
        for (int e = 0; e < sz.dx.size(); ++e)
            if (sz.theta[e] == img) { table[d] = e; break; }
        if (table[d] < 0)
            throw std::logic_error("image of a fork solution is not a fork solution");
    }
    return BaseMap(sy.dx, sz.dx, std::move(table));
}

// X is sober iff e : X -> DX is an isomorphism (bijective with structure-
// preserving inverse).
inline bool is_sober(const Monad& m, const FinSpace& x) {
    Sobrification s = sobrify(m, x);
    if (s.dx.size() != x.size()) return false;
    std::vector<int> inv(x.size(), -1);
    for (int p = 0; p < x.size(); ++p) {
        if (inv[s.e_table[p]] >= 0) return false;
        inv[s.e_table[p]] = p;
    }
    try {
        BaseMap(s.dx, x, inv);
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

// Idempotence diagnostics: (a) DX is sober, (b) the counit theta^flat is an
// isomorphism in Kl(T) with inverse induced by e, i.e. T(e) . theta = eta_DX,
// (c) T(theta) is injective on represented elements.
inline Report idempotence_check(const Monad& m, const FinSpace& x, std::uint64_t seed = 0,
                                int sampled_pairs = 200) {
    Report rep;
    Sobrification s = sobrify(m, x);
    std::string tag = m.name() + "/" + (x.size() ? x.label(0) + ".." : "") + ": ";

    rep.add(tag + "DX is sober", is_sober(m, s.dx));

    // (b) as elements: push theta(d) forward along e and compare with eta(d)
    bool counit_ok = true;
    BaseMap e = s.e();
    for (int d = 0; d < s.dx.size() && counit_ok; ++d) {
        TElem te = m.fmap(e, s.theta[d]);
        if (!(te == m.eta(s.dx, d))) counit_ok = false;
    }
    rep.add(tag + "counit theta^flat invertible (T(e).theta = eta)", counit_ok);

    // (c) injectivity of T(theta) on elements of T(DX)
    bool inj = true;
    std::string wit;
    auto push_theta = [&](const TElem& q) -> Outer {
        // T(theta)(q) as an element of TTX in outer representation
        if (m.measure_style()) {
            std::vector<std::pair<TElem, Rational>> mix;
            for (const auto& [c, w] : std::get<Measure>(q).w) {
                // cell c of DX corresponds to theta of one of its points; DX
                // is discrete for the measure instances, cells are points
                mix.emplace_back(s.theta[c], w);
            }
            return Outer::mixture(std::move(mix));
        }
        // representable: theta as a base map DX -> TX-space
        TSpaceIndex tx(m, x);
        std::vector<int> t(s.dx.size());
        for (int d = 0; d < s.dx.size(); ++d) t[d] = tx.embed(s.theta[d]);
        BaseMap th(s.dx, tx.tspace(), t);
        return Outer::represented(m.fmap(th, q));
    };
    Rng rng(seed, 7);
    std::vector<TElem> qs = gen_elems(m, s.dx, rng, m.measure_style() ? sampled_pairs / 4 : 12);
    for (size_t i = 0; i < qs.size() && inj; ++i)
        for (size_t j = i + 1; j < qs.size() && inj; ++j) {
            if (qs[i] == qs[j]) continue;
            if (push_theta(qs[i]) == push_theta(qs[j])) {
                inj = false;
                wit = "T(theta) collides on " + m.elem_str(s.dx, qs[i]) + " vs " +
                      m.elem_str(s.dx, qs[j]);
            }
        }
    rep.add(tag + std::string("T(theta) injective (") +
                (m.measure_style() ? "sampled" : "exhaustive on generated elements") + ")",
            inj, wit, seed);

    // D(DX) = DX
    Sobrification s2 = sobrify(m, s.dx);
    rep.add(tag + "D(DX) = DX", s2.dx.size() == s.dx.size() && is_sober(m, s.dx));
    return rep;
}

} // namespace elab

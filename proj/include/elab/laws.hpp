#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kleisli.hpp"
#include "monad.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace elab {

// ----- element generation -----

// A spread of valid elements over a space: exhaustive for the representable
// instances (capped), seeded random measures plus the distinguished ones for
// the measure-style instances.
inline std::vector<TElem> gen_elems(const Monad& m, const FinSpace& x, Rng& rng, int budget = 12) {
    std::vector<TElem> out;
    if (m.representable()) {
        TSpaceIndex ix(m, x);
        int n = ix.tspace().size();
        if (n <= budget * 4) {
            for (int t = 0; t < n; ++t) out.push_back(ix.extract(t));
        } else {
            for (int i = 0; i < budget * 4; ++i) out.push_back(ix.extract(rng.below(n)));
        }
        return out;
    }
    for (int p = 0; p < x.size(); ++p) out.push_back(m.eta(x, p));
    if (m.subnormalized()) out.push_back(Measure{}); // the zero subprobability measure
    int cells = m.cell_count(x);
    for (int i = 0; i < budget; ++i) {
        auto w = rng.simplex(cells);
        Measure mm;
        for (int c = 0; c < cells; ++c)
            if (w[c] != 0) mm.w.emplace_back(c, w[c]);
        if (m.subnormalized() && rng.flip()) { // scale below 1
            Rational s(1 + rng.below(3), 4);
            for (auto& [c, q] : mm.w) q *= s;
        }
        mm.canonicalize();
        out.push_back(mm);
    }
    return out;
}

inline std::vector<Outer> gen_outers(const Monad& m, const FinSpace& x, Rng& rng, int budget = 10) {
    std::vector<Outer> out;
    if (m.representable()) {
        FinSpace tx = m.tspace(x);
        for (const auto& e : gen_elems(m, tx, rng, budget)) out.push_back(Outer::represented(e));
        return out;
    }
    auto inner = gen_elems(m, x, rng, budget);
    for (const auto& p : inner) {
        out.push_back(m.outer_eta(x, p));
        out.push_back(m.outer_Teta(x, p));
    }
    for (int i = 0; i < budget; ++i) {
        int k = 1 + rng.below(3);
        auto w = rng.simplex(k);
        std::vector<std::pair<TElem, Rational>> mix;
        for (int j = 0; j < k; ++j)
            if (w[j] != 0) mix.emplace_back(inner[rng.below((int)inner.size())], w[j]);
        out.push_back(Outer::mixture(std::move(mix)));
    }
    return out;
}

// Elements of TTTX. For the representable instances these are elements over
// tspace(tspace(x)); for the measure-style ones, mixtures of outers.
struct Level3 {
    std::vector<std::pair<Outer, Rational>> mix; // measure-style
    std::optional<TElem> rep;                    // representable, over tspace(tspace(x))
};

inline std::vector<Level3> gen_level3(const Monad& m, const FinSpace& x, Rng& rng, int budget = 8) {
    std::vector<Level3> out;
    if (m.representable()) {
        FinSpace ttx = m.tspace(m.tspace(x));
        for (const auto& e : gen_elems(m, ttx, rng, budget)) out.push_back({{}, e});
        return out;
    }
    auto outers = gen_outers(m, x, rng, budget);
    for (int i = 0; i < budget; ++i) {
        int k = 1 + rng.below(3);
        auto w = rng.simplex(k);
        Level3 l3;
        for (int j = 0; j < k; ++j)
            if (w[j] != 0) l3.mix.emplace_back(outers[rng.below((int)outers.size())], w[j]);
        out.push_back(std::move(l3));
    }
    return out;
}

// mu at level TX: TTTX -> TTX.
inline Outer level3_mu_outer(const Monad& m, const FinSpace& x, const Level3& xi) {
    if (m.representable())
        return Outer::represented(m.mu(m.tspace(x), Outer::represented(*xi.rep)));
    std::vector<std::pair<TElem, Rational>> mix;
    for (const auto& [rho, w] : xi.mix)
        for (const auto& [e, q] : rho.mix) mix.emplace_back(e, w * q);
    return Outer::mixture(std::move(mix));
}

// mu as a base map tspace(tspace(x)) -> tspace(x), representable only.
inline BaseMap mu_basemap(const Monad& m, const FinSpace& x) {
    TSpaceIndex tx(m, x);
    TSpaceIndex ttx(m, tx.tspace());
    std::vector<int> t(ttx.tspace().size());
    for (int p = 0; p < ttx.tspace().size(); ++p)
        t[p] = tx.embed(m.mu(x, Outer::represented(ttx.extract(p))));
    return BaseMap(ttx.tspace(), tx.tspace(), std::move(t));
}

// T(mu) : TTTX -> TTX.
inline Outer level3_Tmu(const Monad& m, const FinSpace& x, const Level3& xi) {
    if (m.representable())
        return Outer::represented(m.fmap(mu_basemap(m, x), *xi.rep));
    std::vector<std::pair<TElem, Rational>> mix;
    for (const auto& [rho, w] : xi.mix) mix.emplace_back(m.mu(x, rho), w);
    return Outer::mixture(std::move(mix));
}

// T(g) acting on outers (TTg applied to an element of TTX).
inline Outer outer_fmap(const Monad& m, const BaseMap& g, const Outer& rho) {
    if (m.representable()) {
        TSpaceIndex da(m, g.dom()), cb(m, g.cod());
        std::vector<int> t(da.tspace().size());
        for (int p = 0; p < da.tspace().size(); ++p) t[p] = cb.embed(m.fmap(g, da.extract(p)));
        BaseMap tg(da.tspace(), cb.tspace(), std::move(t));
        return Outer::represented(m.fmap(tg, *rho.rep));
    }
    std::vector<std::pair<TElem, Rational>> mix;
    for (const auto& [e, q] : rho.mix) mix.emplace_back(m.fmap(g, e), q);
    return Outer::mixture(std::move(mix));
}

// nabla as a base map tspace(x) x tspace(y) -> tspace(x x y), representable only.
inline BaseMap nabla_basemap(const Monad& m, const FinSpace& x, const FinSpace& y) {
    TSpaceIndex tx(m, x), ty(m, y);
    FinSpace dom = product_space(tx.tspace(), ty.tspace());
    TSpaceIndex txy(m, product_space(x, y));
    std::vector<int> t(dom.size());
    for (int p = 0; p < dom.size(); ++p) {
        auto [i, j] = unpair_index(ty.tspace(), p);
        t[p] = txy.embed(m.nabla(x, y, tx.extract(i), ty.extract(j)));
    }
    return BaseMap(std::move(dom), txy.tspace(), std::move(t));
}

// ----- law suites -----

namespace detail {
inline std::string lawname(const Monad& m, const FinSpace& x, const std::string& law) {
    return m.name() + "/" + (x.size() ? x.label(0) + ".." : "empty") + std::to_string(x.size()) + ": " + law;
}
}

// Monad laws, naturality, and the monoidal/commutativity laws for nabla, on
// generated elements over one space. Failures carry a printable witness.
inline void monad_law_suite(const Monad& m, const FinSpace& x, Rng& rng, Report& rep) {
    auto elems = gen_elems(m, x, rng);
    auto outers = gen_outers(m, x, rng);
    auto l3s = gen_level3(m, x, rng);
    std::uint64_t seed = rng.seed();

    bool ok = true;
    std::string wit;
    for (const auto& p : elems) {
        if (!(m.mu(x, m.outer_eta(x, p)) == p)) { ok = false; wit = "mu(eta_T(p)) != p at p=" + m.elem_str(x, p); break; }
        if (!(m.mu(x, m.outer_Teta(x, p)) == p)) { ok = false; wit = "mu(T eta(p)) != p at p=" + m.elem_str(x, p); break; }
    }
    rep.add(detail::lawname(m, x, "unit laws"), ok, wit, seed);

    ok = true; wit.clear();
    for (const auto& xi : l3s) {
        TElem a = m.mu(x, level3_mu_outer(m, x, xi));
        TElem b = m.mu(x, level3_Tmu(m, x, xi));
        if (!(a == b)) { ok = false; wit = "mu . mu_T != mu . T mu: " + m.elem_str(x, a) + " vs " + m.elem_str(x, b); break; }
    }
    rep.add(detail::lawname(m, x, "associativity"), ok, wit, seed);

    // naturality of eta and mu against a sampled endo base map
    std::vector<BaseMap> gs;
    try {
        auto all = all_base_maps(x, x);
        for (int i = 0; i < (int)all.size() && i < 12; ++i) gs.push_back(all[rng.below((int)all.size())]);
    } catch (const std::length_error&) {
        gs.push_back(BaseMap::identity(x));
    }
    ok = true; wit.clear();
    for (const auto& g : gs) {
        for (int p = 0; ok && p < x.size(); ++p)
            if (!(m.fmap(g, m.eta(x, p)) == m.eta(x, g(p)))) { ok = false; wit = "eta not natural at " + x.label(p); }
        for (const auto& rho : outers)
            if (ok && !(m.fmap(g, m.mu(x, rho)) == m.mu(x, outer_fmap(m, g, rho)))) {
                ok = false; wit = "mu not natural at rho=" + m.outer_str(x, rho);
            }
        for (const auto& p : elems) { // functoriality through a composite
            if (ok && !(m.fmap(g, m.fmap(g, p)) == m.fmap(compose(g, g), p))) { ok = false; wit = "fmap not functorial"; }
        }
    }
    rep.add(detail::lawname(m, x, "naturality"), ok, wit, seed);

    // monoidal structure
    FinSpace one = unit_space(x.kind());
    TElem eta1 = m.eta(one, 0);
    ok = true; wit.clear();
    for (int p = 0; ok && p < x.size(); ++p)
        for (int q = 0; ok && q < x.size(); ++q) {
            FinSpace xx = product_space(x, x);
            if (!(m.nabla(x, x, m.eta(x, p), m.eta(x, q)) == m.eta(xx, pair_index(x, p, q)))) {
                ok = false; wit = "nabla(eta,eta) != eta(pair) at (" + x.label(p) + "," + x.label(q) + ")";
            }
        }
    rep.add(detail::lawname(m, x, "nabla unit compatibility"), ok, wit, seed);

    ok = true; wit.clear();
    BaseMap sw = swap_map(x, x);
    BaseMap lu = lunit_map(x);
    for (size_t i = 0; ok && i < elems.size(); ++i)
        for (size_t j = i; ok && j < elems.size(); ++j) {
            const TElem &p = elems[i], &q = elems[j];
            if (!(m.fmap(sw, m.nabla(x, x, p, q)) == m.nabla(x, x, q, p))) {
                ok = false; wit = "nabla not symmetric at p=" + m.elem_str(x, p) + " q=" + m.elem_str(x, q);
            }
        }
    for (const auto& p : elems)
        if (ok && !(m.fmap(lu, m.nabla(one, x, eta1, p)) == p)) { ok = false; wit = "nabla left unitor fails"; }
    rep.add(detail::lawname(m, x, "nabla symmetry and unitality"), ok, wit, seed);

    ok = true; wit.clear();
    BaseMap as = assoc_map(x, x, x);
    for (size_t i = 0; ok && i + 2 < elems.size(); i += 3) {
        const TElem &p = elems[i], &q = elems[i + 1], &r = elems[i + 2];
        FinSpace xx = product_space(x, x);
        TElem lhs = m.fmap(as, m.nabla(xx, x, m.nabla(x, x, p, q), r));
        TElem rhs = m.nabla(x, product_space(x, x), p, m.nabla(x, x, q, r));
        if (!(lhs == rhs)) { ok = false; wit = "nabla associativity fails"; }
    }
    rep.add(detail::lawname(m, x, "nabla associativity"), ok, wit, seed);

    // commutativity: nabla . (mu x mu) = mu . T(nabla) . nabla on outers
    ok = true; wit.clear();
    for (size_t i = 0; ok && i < outers.size(); ++i)
        for (size_t j = 0; ok && j < outers.size() && j < i + 3; ++j) {
            const Outer &rho = outers[i], &sig = outers[j];
            TElem lhs = m.nabla(x, x, m.mu(x, rho), m.mu(x, sig));
            TElem rhs;
            if (m.representable()) {
                TElem big = m.nabla(m.tspace(x), m.tspace(x), *rho.rep, *sig.rep);
                TElem mid = m.fmap(nabla_basemap(m, x, x), big);
                rhs = m.mu(product_space(x, x), Outer::represented(mid));
            } else {
                std::vector<std::pair<TElem, Rational>> mix;
                for (const auto& [p, wp] : rho.mix)
                    for (const auto& [q, wq] : sig.mix) mix.emplace_back(m.nabla(x, x, p, q), wp * wq);
                rhs = m.mu(product_space(x, x), Outer::mixture(std::move(mix)));
            }
            if (!(lhs == rhs)) { ok = false; wit = "commutative-strength law fails"; }
        }
    rep.add(detail::lawname(m, x, "commutativity (nabla vs mu)"), ok, wit, seed);
}

// T1 = 1? Expected: yes for dist, giry, reader (and the name-generation
// monad, checked in its own module); no for subgiry, maybe, hoare.
inline void affineness_check(const Monad& m, Report& rep) {
    FinSpace one = unit_space(m.base_kind());
    bool t1_trivial;
    if (m.representable()) {
        t1_trivial = m.tspace(one).size() == 1;
    } else {
        // all probability measures on a single cell are eta; sub-probability
        // admits e.g. the zero measure
        t1_trivial = !m.subnormalized();
    }
    rep.add(m.name() + ": affineness matches expectation", t1_trivial == m.affine(),
            t1_trivial ? "T1 ~ 1" : "T1 has more than one element");
}

// CD comonoid laws for one object: counit, coassociativity, cocommutativity.
inline void cd_law_suite(const Monad& m, const FinSpace& x, Report& rep) {
    KleisliMorphism cp = copy_morphism(m, x);
    KleisliMorphism dl = del_morphism(m, x);
    KleisliMorphism idx = kleisli_identity(m, x);

    KleisliMorphism lu = pure_morphism(m, lunit_map(x));
    KleisliMorphism ru = pure_morphism(m, runit_map(x));
    KleisliMorphism counitL = kleisli_compose(lu, kleisli_compose(kleisli_tensor(dl, idx), cp));
    KleisliMorphism counitR = kleisli_compose(ru, kleisli_compose(kleisli_tensor(idx, dl), cp));
    rep.add(detail::lawname(m, x, "comonoid counit"), counitL == idx && counitR == idx);

    KleisliMorphism al = pure_morphism(m, assoc_map(x, x, x));
    KleisliMorphism coassocL = kleisli_compose(al, kleisli_compose(kleisli_tensor(cp, idx), cp));
    KleisliMorphism coassocR = kleisli_compose(kleisli_tensor(idx, cp), cp);
    rep.add(detail::lawname(m, x, "comonoid coassociativity"), coassocL == coassocR);

    KleisliMorphism swp = pure_morphism(m, swap_map(x, x));
    rep.add(detail::lawname(m, x, "comonoid cocommutativity"), kleisli_compose(swp, cp) == cp);
}

// The five thunk-force axioms. For the representable instances these are
// morphism equalities over literal TA spaces; naturality is quantified over
// enumerated (or sampled) test morphisms. The measure-style instances get the
// element-level forms: thunk is p |-> delta_p and force is mu.
inline void thunkforce_suite(const Monad& m, const FinSpace& a, const FinSpace& b, Rng& rng, Report& rep,
                             int sample_fs = 24) {
    std::uint64_t seed = rng.seed();
    if (!m.representable()) {
        auto elems = gen_elems(m, a, rng);
        auto outers = gen_outers(m, a, rng);
        bool ok = true;
        std::string wit;
        for (const auto& p : elems)
            if (!(m.mu(a, m.outer_eta(a, p)) == p)) { ok = false; wit = "force(thunk(p)) != p"; break; }
        rep.add(detail::lawname(m, a, "thunk-force (element level) force.thunk=id"), ok, wit, seed);
        ok = true; wit.clear();
        for (const auto& rho : outers) {
            // L(force) . thunk_L = 1_{LA} unfolds, at an element rho of TA, to
            // the outer-level unit law mu_{TA}(delta_rho) = rho
            Level3 xi;
            xi.mix = {{rho, 1}};
            if (!(level3_mu_outer(m, a, xi) == rho)) {
                ok = false;
                wit = "mu_T(delta_rho) != rho at rho=" + m.outer_str(a, rho);
                break;
            }
        }
        rep.add(detail::lawname(m, a, "thunk-force (element level) L(force).thunk_L=id"), ok, wit, seed);
        return;
    }

    KleisliMorphism th_a = thunk_morphism(m, a);
    KleisliMorphism fo_a = force_morphism(m, a);
    rep.add(detail::lawname(m, a, "thunk-force axiom 4: force.thunk=id"),
            kleisli_compose(fo_a, th_a) == kleisli_identity(m, a), "", seed);

    KleisliMorphism th_ta = thunk_morphism(m, m.tspace(a));
    rep.add(detail::lawname(m, a, "thunk-force axiom 5: L(force).thunk_L=id"),
            kleisli_compose(L_morphism(fo_a), th_ta) == kleisli_identity(m, m.tspace(a)), "", seed);

    rep.add(detail::lawname(m, a, "thunk-force axiom 3: L(thunk).thunk=thunk_L.thunk"),
            kleisli_compose(L_morphism(th_a), th_a) == kleisli_compose(th_ta, th_a), "", seed);

    // axioms 1 and 2: naturality of force and of thunk_L against morphisms f : A ~> B
    std::vector<KleisliMorphism> fs;
    try {
        auto all = all_kleisli(m, a, b);
        if ((int)all.size() <= sample_fs)
            fs = all;
        else
            for (int i = 0; i < sample_fs; ++i) fs.push_back(all[rng.below((int)all.size())]);
    } catch (const std::length_error&) {
        for (int i = 0; i < sample_fs; ++i) {
            // fall back to pure morphisms of random base maps
            std::vector<int> t(a.size());
            for (auto& v : t) v = rng.below(b.size());
            try {
                fs.push_back(pure_morphism(m, BaseMap(a, b, t)));
            } catch (const std::invalid_argument&) {}
        }
    }
    KleisliMorphism fo_b = force_morphism(m, b);
    KleisliMorphism th_tb = thunk_morphism(m, m.tspace(b));
    bool nat1 = true, nat2 = true;
    std::string wit1, wit2;
    for (const auto& f : fs) {
        KleisliMorphism lf = L_morphism(f);
        if (nat1 && !(kleisli_compose(f, fo_a) == kleisli_compose(fo_b, lf))) {
            nat1 = false;
            wit1 = "force not natural against some f";
        }
        if (nat2 && !(kleisli_compose(L_morphism(lf), th_ta) == kleisli_compose(th_tb, lf))) {
            nat2 = false;
            wit2 = "thunk_L not natural against some f";
        }
        if (!nat1 && !nat2) break;
    }
    rep.add(detail::lawname(m, a, "thunk-force axiom 1: force natural"), nat1, wit1, seed);
    rep.add(detail::lawname(m, a, "thunk-force axiom 2: thunk_L natural"), nat2, wit2, seed);
}

// ----- random kernels and the inclusion chain -----

inline KleisliMorphism random_kleisli(const Monad& m, const FinSpace& dom, const FinSpace& cod, Rng& rng) {
    std::vector<TElem> table(dom.size(), TElem{});
    switch (m.id()) {
        case MonadId::Dist:
        case MonadId::Giry:
        case MonadId::SubGiry: {
            int cells = m.cell_count(cod);
            // one value per atom of the domain, repeated across its points
            for (int a = 0; a < (m.id() == MonadId::Dist ? dom.size() : dom.atom_count()); ++a) {
                auto w = rng.simplex(cells);
                Measure mm;
                for (int c = 0; c < cells; ++c)
                    if (w[c] != 0) mm.w.emplace_back(c, w[c]);
                if (m.subnormalized() && rng.flip()) {
                    Rational s(rng.below(4), 4);
                    for (auto& [c, q] : mm.w) q *= s;
                }
                mm.canonicalize();
                if (m.id() == MonadId::Dist)
                    table[a] = mm;
                else
                    for (int x : dom.atom(a).members()) table[x] = mm;
            }
            break;
        }
        case MonadId::Maybe:
            for (int x = 0; x < dom.size(); ++x) table[x] = MaybeVal{rng.below(cod.size() + 1) - 1};
            break;
        case MonadId::Reader:
            for (int x = 0; x < dom.size(); ++x) table[x] = ReaderVal{rng.below(cod.size()), rng.below(cod.size())};
            break;
        case MonadId::Hoare: {
            // choose in a linear extension and force monotonicity upward;
            // indistinguishable points (equal closures) share a value
            std::vector<int> order(dom.size());
            for (int i = 0; i < dom.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](int i, int j) { return dom.down(i).count() < dom.down(j).count(); });
            std::vector<bool> done(dom.size(), false);
            for (int y : order) {
                int twin = -1;
                for (int x = 0; x < dom.size(); ++x)
                    if (done[x] && dom.down(x) == dom.down(y)) { twin = x; break; }
                if (twin >= 0) {
                    table[y] = table[twin];
                    done[y] = true;
                    continue;
                }
                Bits s(cod.size());
                for (int i = 0; i < cod.size(); ++i)
                    if (rng.flip() && rng.flip()) s = s | cod.down(i);
                for (int x : dom.down(y).members())
                    if (done[x]) s = s | std::get<ClosedSet>(table[x]).s;
                table[y] = ClosedSet{s};
                done[y] = true;
            }
            break;
        }
    }
    return KleisliMorphism(m, dom, cod, std::move(table));
}

// pure => thunkable => deterministic on random kernels; exhaustive for the
// representable instances on small carriers.
inline void inclusion_chain_suite(const Monad& m, const std::vector<FinSpace>& spaces, Rng& rng,
                                  int nrandom, Report& rep) {
    std::vector<FinSpace> mine;
    for (const auto& s : spaces)
        if (s.kind() == m.base_kind()) mine.push_back(s);
    if (mine.empty()) return;
    std::uint64_t seed = rng.seed();
    long long checked = 0;
    bool ok = true;
    std::string wit;
    auto check = [&](const KleisliMorphism& f) {
        ++checked;
        bool pure = !is_pure(f).empty();
        bool th = is_thunkable(f);
        bool det = is_deterministic(f);
        if ((pure && !th) || (th && !det)) {
            ok = false;
            wit = "chain violated on a " + m.name() + " kernel (pure=" + (pure ? "1" : "0") +
                  " thunkable=" + (th ? "1" : "0") + " deterministic=" + (det ? "1" : "0") + ")";
        }
    };
    for (int i = 0; i < nrandom && ok; ++i) {
        const FinSpace& d = mine[rng.below((int)mine.size())];
        const FinSpace& c = mine[rng.below((int)mine.size())];
        check(random_kleisli(m, d, c, rng));
    }
    if (m.representable()) {
        for (const auto& d : mine)
            for (const auto& c : mine) {
                if (!ok || d.size() > 3 || c.size() > 3) continue;
                for (const auto& f : all_kleisli(m, d, c)) {
                    check(f);
                    if (!ok) break;
                }
            }
    }
    rep.add(m.name() + ": inclusion chain pure => thunkable => deterministic (" +
                std::to_string(checked) + " kernels)",
            ok, wit, seed);
}

// Full suite over a corpus of spaces, dispatched per instance on its base kind.
inline Report law_suite(const std::vector<FinSpace>& spaces, std::uint64_t seed,
                        int chain_random = 1000) {
    Report rep;
    for (const Monad* m : Monad::all()) {
        Rng rng(seed, (std::uint64_t)m->id() + 1);
        affineness_check(*m, rep);
        std::vector<FinSpace> mine;
        for (const auto& s : spaces)
            if (s.kind() == m->base_kind()) mine.push_back(s);
        for (const auto& x : mine) {
            monad_law_suite(*m, x, rng, rep);
            cd_law_suite(*m, x, rep);
        }
        for (size_t i = 0; i < mine.size(); ++i)
            thunkforce_suite(*m, mine[i], mine[(i + 1) % mine.size()], rng, rep);
        inclusion_chain_suite(*m, mine, rng, chain_random, rep);
    }
    return rep;
}

} // namespace elab

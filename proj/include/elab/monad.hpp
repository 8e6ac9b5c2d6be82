#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "basemap.hpp"
#include "elem.hpp"
#include "space.hpp"

namespace elab {

enum class MonadId { Dist, Giry, SubGiry, Maybe, Reader, Hoare };

// One of the six concrete commutative monads. Weights are exact rationals and
// all structure maps are total functions on canonical-form elements, so every
// law and classifier below is a decidable equality test.
//
// The measure-style instances (Dist, Giry, SubGiry) store a measure by its
// weights on cells: points for Dist, atoms of the algebra for Giry/SubGiry. A
// measure on a finite algebra is exactly its atom weights, which makes the
// non-injectivity of eta on non-separated spaces literal.
//
// The remaining instances (Maybe, Reader, Hoare) are representable: TX is
// itself a finite space (tspace), and elements of TTX are ordinary elements
// over it.
class Monad {
public:
    static const Monad& dist() { static Monad m(MonadId::Dist, "dist", Kind::Set); return m; }
    static const Monad& giry() { static Monad m(MonadId::Giry, "giry", Kind::Meas); return m; }
    static const Monad& subgiry() { static Monad m(MonadId::SubGiry, "subgiry", Kind::Meas); return m; }
    static const Monad& maybe() { static Monad m(MonadId::Maybe, "maybe", Kind::Set); return m; }
    static const Monad& reader() { static Monad m(MonadId::Reader, "reader", Kind::Set); return m; }
    static const Monad& hoare() { static Monad m(MonadId::Hoare, "hoare", Kind::Top); return m; }

    static const Monad* by_name(const std::string& n) {
        for (const Monad* m : {&dist(), &giry(), &subgiry(), &maybe(), &reader(), &hoare()})
            if (m->name() == n) return m;
        return nullptr;
    }
    static std::vector<const Monad*> all() {
        return {&dist(), &giry(), &subgiry(), &maybe(), &reader(), &hoare()};
    }

    MonadId id() const { return id_; }
    const std::string& name() const { return name_; }
    Kind base_kind() const { return base_; }
    bool measure_style() const { return id_ == MonadId::Dist || id_ == MonadId::Giry || id_ == MonadId::SubGiry; }
    bool representable() const { return !measure_style(); }
    // Total mass constraint for measure-style elements: exactly 1 or at most 1.
    bool subnormalized() const { return id_ == MonadId::SubGiry; }

    // ----- cells (measure-style support indices) -----

    int cell_count(const FinSpace& x) const {
        return id_ == MonadId::Dist ? x.size() : x.atom_count();
    }
    int cell_of_point(const FinSpace& x, int p) const {
        return id_ == MonadId::Dist ? p : x.atom_of(p);
    }
    int cell_rep(const FinSpace& x, int c) const {
        return id_ == MonadId::Dist ? c : x.atom_rep(c);
    }
    std::string cell_label(const FinSpace& x, int c) const {
        return id_ == MonadId::Dist ? x.label(c) : x.set_label(x.atom(c));
    }

    // ----- validity -----

    void validate(const FinSpace& x, const TElem& e) const {
        if (x.kind() != base_)
            throw std::invalid_argument(name_ + " acts on " + kind_name(base_) + " spaces");
        switch (id_) {
            case MonadId::Dist:
            case MonadId::Giry:
            case MonadId::SubGiry: {
                const auto& m = std::get<Measure>(e);
                Rational tot = 0;
                int prev = -1;
                for (const auto& [c, q] : m.w) {
                    if (c <= prev) throw std::invalid_argument("measure not in canonical order");
                    prev = c;
                    if (c < 0 || c >= cell_count(x)) throw std::invalid_argument("measure cell out of range");
                    if (q < 0) throw std::invalid_argument("negative weight");
                    if (q == 0) throw std::invalid_argument("zero weight not in canonical form");
                    tot += q;
                }
                if (subnormalized() ? tot > 1 : tot != 1)
                    throw std::invalid_argument(name_ + " measure has total mass " + rational_str(tot));
                return;
            }
            case MonadId::Maybe: {
                int v = std::get<MaybeVal>(e).v;
                if (v < -1 || v >= x.size()) throw std::invalid_argument("maybe value out of range");
                return;
            }
            case MonadId::Reader: {
                auto r = std::get<ReaderVal>(e);
                if (r.a < 0 || r.a >= x.size() || r.b < 0 || r.b >= x.size())
                    throw std::invalid_argument("reader value out of range");
                return;
            }
            case MonadId::Hoare: {
                const auto& c = std::get<ClosedSet>(e).s;
                if (c.universe() != x.size()) throw std::invalid_argument("closed set over wrong carrier");
                if (!x.closed(c)) throw std::invalid_argument("set " + x.set_label(c) + " is not closed");
                return;
            }
        }
    }

    // ----- monad structure on elements -----

    TElem eta(const FinSpace& x, int point) const {
        if (point < 0 || point >= x.size()) throw std::out_of_range("eta: unknown point");
        switch (id_) {
            case MonadId::Dist:
            case MonadId::Giry:
            case MonadId::SubGiry:
                return Measure{{{cell_of_point(x, point), 1}}};
            case MonadId::Maybe:
                return MaybeVal{point};
            case MonadId::Reader:
                return ReaderVal{point, point};
            case MonadId::Hoare:
                return ClosedSet{x.down(point)};
        }
        throw std::logic_error("bad monad");
    }

    // Pushforward along a base map.
    TElem fmap(const BaseMap& g, const TElem& p) const {
        const FinSpace& a = g.dom();
        const FinSpace& b = g.cod();
        switch (id_) {
            case MonadId::Dist:
            case MonadId::Giry:
            case MonadId::SubGiry: {
                Measure out;
                for (const auto& [c, q] : std::get<Measure>(p).w)
                    out.w.emplace_back(cell_of_point(b, g(cell_rep(a, c))), q);
                out.canonicalize();
                return out;
            }
            case MonadId::Maybe: {
                auto m = std::get<MaybeVal>(p);
                return m.nothing() ? m : MaybeVal{g(m.v)};
            }
            case MonadId::Reader: {
                auto r = std::get<ReaderVal>(p);
                return ReaderVal{g(r.a), g(r.b)};
            }
            case MonadId::Hoare: {
                Bits out(b.size());
                for (int x : std::get<ClosedSet>(p).s.members()) out = out | b.down(g(x));
                return ClosedSet{out};
            }
        }
        throw std::logic_error("bad monad");
    }

    // Monoidal structure: joint element over product_space(x, y) formed by
    // independent combination.
    TElem nabla(const FinSpace& x, const FinSpace& y, const TElem& p, const TElem& q) const {
        FinSpace xy = product_space(x, y);
        switch (id_) {
            case MonadId::Dist:
            case MonadId::Giry:
            case MonadId::SubGiry: {
                Measure out;
                for (const auto& [cp, wp] : std::get<Measure>(p).w)
                    for (const auto& [cq, wq] : std::get<Measure>(q).w) {
                        int pt = pair_index(y, cell_rep(x, cp), cell_rep(y, cq));
                        out.w.emplace_back(cell_of_point(xy, pt), wp * wq);
                    }
                out.canonicalize();
                return out;
            }
            case MonadId::Maybe: {
                auto mp = std::get<MaybeVal>(p), mq = std::get<MaybeVal>(q);
                if (mp.nothing() || mq.nothing()) return MaybeVal{-1};
                return MaybeVal{pair_index(y, mp.v, mq.v)};
            }
            case MonadId::Reader: {
                auto rp = std::get<ReaderVal>(p), rq = std::get<ReaderVal>(q);
                return ReaderVal{pair_index(y, rp.a, rq.a), pair_index(y, rp.b, rq.b)};
            }
            case MonadId::Hoare: {
                Bits out(xy.size());
                for (int i : std::get<ClosedSet>(p).s.members())
                    for (int j : std::get<ClosedSet>(q).s.members()) out.set(pair_index(y, i, j));
                return ClosedSet{out};
            }
        }
        throw std::logic_error("bad monad");
    }

    // mu . T(k) applied to p, for a Kleisli table k : A -> TB given pointwise.
    // This is the single primitive from which Kleisli composition and the DSL
    // let-sequencing are built. For Giry/SubGiry the table must be constant on
    // atoms of A (checked when kernels are constructed).
    TElem bind(const FinSpace& a, const FinSpace& b, const TElem& p,
               std::span<const TElem> table) const {
        if ((int)table.size() != a.size()) throw std::invalid_argument("bind: table size mismatch");
        switch (id_) {
            case MonadId::Dist:
            case MonadId::Giry:
            case MonadId::SubGiry: {
                Measure out;
                for (const auto& [c, q] : std::get<Measure>(p).w)
                    for (const auto& [d, r] : std::get<Measure>(table[cell_rep(a, c)]).w)
                        out.w.emplace_back(d, q * r);
                out.canonicalize();
                return out;
            }
            case MonadId::Maybe: {
                auto m = std::get<MaybeVal>(p);
                return m.nothing() ? TElem(MaybeVal{-1}) : table[m.v];
            }
            case MonadId::Reader: {
                auto r = std::get<ReaderVal>(p);
                return ReaderVal{std::get<ReaderVal>(table[r.a]).a, std::get<ReaderVal>(table[r.b]).b};
            }
            case MonadId::Hoare: {
                Bits out(b.size());
                for (int x : std::get<ClosedSet>(p).s.members())
                    out = out | std::get<ClosedSet>(table[x]).s;
                return ClosedSet{out};
            }
        }
        throw std::logic_error("bad monad");
    }

    // ----- representable layer: TX as a finite space -----

    FinSpace tspace(const FinSpace& x) const {
        switch (id_) {
            case MonadId::Maybe: {
                auto labels = x.labels();
                std::string none = "Nothing";
                while (x.has_point(none)) none += "'"; // nested TX adds a primed Nothing
                labels.push_back(none);
                return FinSpace::make_set(std::move(labels));
            }
            case MonadId::Reader: {
                std::vector<std::string> labels;
                for (int i = 0; i < x.size(); ++i)
                    for (int j = 0; j < x.size(); ++j)
                        labels.push_back(detail::pair_label(x.label(i), x.label(j)));
                return FinSpace::make_set(std::move(labels));
            }
            case MonadId::Hoare:
                return lower_vietoris_space(x);
            default:
                throw std::invalid_argument("TX is not a finite space for " + name_);
        }
    }

    int embed(const FinSpace& x, const TElem& e) const {
        switch (id_) {
            case MonadId::Maybe: {
                auto m = std::get<MaybeVal>(e);
                return m.nothing() ? x.size() : m.v;
            }
            case MonadId::Reader: {
                auto r = std::get<ReaderVal>(e);
                return r.a * x.size() + r.b;
            }
            case MonadId::Hoare: {
                auto cs = x.closed_sets();
                const Bits& s = std::get<ClosedSet>(e).s;
                for (int i = 0; i < (int)cs.size(); ++i)
                    if (cs[i] == s) return i;
                throw std::invalid_argument("set is not closed");
            }
            default:
                throw std::invalid_argument("embed: " + name_ + " is not representable");
        }
    }

    TElem extract(const FinSpace& x, int t) const {
        switch (id_) {
            case MonadId::Maybe:
                return t == x.size() ? MaybeVal{-1} : MaybeVal{t};
            case MonadId::Reader:
                return ReaderVal{t / x.size(), t % x.size()};
            case MonadId::Hoare:
                return ClosedSet{x.closed_sets().at(t)};
            default:
                throw std::invalid_argument("extract: " + name_ + " is not representable");
        }
    }

    // eta as a base map X -> TX-space.
    BaseMap eta_map(const FinSpace& x) const {
        FinSpace tx = tspace(x);
        std::vector<int> t(x.size());
        if (id_ == MonadId::Hoare) {
            auto cs = x.closed_sets();
            std::map<Bits, int> idx;
            for (int i = 0; i < (int)cs.size(); ++i) idx[cs[i]] = i;
            for (int p = 0; p < x.size(); ++p) t[p] = idx.at(x.down(p));
        } else {
            for (int p = 0; p < x.size(); ++p) t[p] = embed(x, eta(x, p));
        }
        return BaseMap(x, tx, std::move(t));
    }

    // ----- outer layer: elements of TTX -----

    void validate_outer(const FinSpace& x, const Outer& rho) const {
        if (measure_style()) {
            if (rho.rep) throw std::invalid_argument("measure-style outer must be a mixture");
            Rational tot = 0;
            for (const auto& [e, q] : rho.mix) {
                validate(x, e);
                if (q < 0) throw std::invalid_argument("negative outer weight");
                tot += q;
            }
            if (subnormalized() ? tot > 1 : tot != 1)
                throw std::invalid_argument("outer mixture has total mass " + rational_str(tot));
        } else {
            if (!rho.rep) throw std::invalid_argument("representable outer must carry an element of T(TX)");
            validate(tspace(x), *rho.rep);
        }
    }

    // eta_{TX}(p): the thunk of p.
    Outer outer_eta(const FinSpace& x, const TElem& p) const {
        if (measure_style()) return Outer::mixture({{p, 1}});
        return Outer::represented(eta(tspace(x), embed(x, p)));
    }

    // (T eta)(p): p pushed forward along eta.
    Outer outer_Teta(const FinSpace& x, const TElem& p) const {
        if (measure_style()) {
            std::vector<std::pair<TElem, Rational>> mix;
            for (const auto& [c, q] : std::get<Measure>(p).w)
                mix.emplace_back(eta(x, cell_rep(x, c)), q);
            return Outer::mixture(std::move(mix));
        }
        return Outer::represented(fmap(eta_map(x), p));
    }

    // Mixture / flattening.
    TElem mu(const FinSpace& x, const Outer& rho) const {
        if (measure_style()) {
            Measure out;
            for (const auto& [e, q] : rho.mix)
                for (const auto& [c, r] : std::get<Measure>(e).w) out.w.emplace_back(c, q * r);
            out.canonicalize();
            return out;
        }
        switch (id_) {
            case MonadId::Maybe: {
                auto m = std::get<MaybeVal>(*rho.rep);
                return m.nothing() ? TElem(MaybeVal{-1}) : extract(x, m.v);
            }
            case MonadId::Reader: {
                auto r = std::get<ReaderVal>(*rho.rep);
                auto e1 = std::get<ReaderVal>(extract(x, r.a));
                auto e2 = std::get<ReaderVal>(extract(x, r.b));
                return ReaderVal{e1.a, e2.b};
            }
            case MonadId::Hoare: {
                auto cs = x.closed_sets();
                Bits out(x.size());
                for (int i : std::get<ClosedSet>(*rho.rep).s.members()) out = out | cs[i];
                return ClosedSet{out};
            }
            default:
                throw std::logic_error("bad monad");
        }
    }

    // The n-sample observation: mu . T(nabla_n . Delta_n) applied to rho,
    // as an element over power_space(x, n). For n = 0 this is the total-mass
    // observation and for n = 1 it is mu.
    TElem observe(const FinSpace& x, const Outer& rho, int n) const {
        if (n < 0) throw std::invalid_argument("observe: negative sample count");
        FinSpace xn = power_space(x, n);
        if (measure_style()) {
            Measure out;
            for (const auto& [e, w] : rho.mix) {
                const auto& m = std::get<Measure>(e).w;
                // the 0-fold power of any inner measure is eta(*); the n-fold
                // power of the zero measure is zero
                if (n >= 1 && m.empty()) continue;
                std::vector<int> idx(n, 0);
                while (true) {
                    Rational prod = w;
                    std::vector<int> tup(n);
                    for (int k = 0; k < n; ++k) {
                        prod *= m[idx[k]].second;
                        tup[k] = cell_rep(x, m[idx[k]].first);
                    }
                    int pt = n == 0 ? 0 : tuple_index(x, tup);
                    out.w.emplace_back(cell_of_point(xn, pt), prod);
                    int k = n - 1;
                    while (k >= 0 && ++idx[k] == (int)m.size()) idx[k--] = 0;
                    if (k < 0) break;
                }
            }
            out.canonicalize();
            return out;
        }
        switch (id_) {
            case MonadId::Maybe: {
                auto outer = std::get<MaybeVal>(*rho.rep);
                if (outer.nothing()) return MaybeVal{-1};
                auto inner = std::get<MaybeVal>(extract(x, outer.v));
                if (n == 0) return MaybeVal{0};
                if (inner.nothing()) return MaybeVal{-1};
                return MaybeVal{tuple_index(x, std::vector<int>(n, inner.v))};
            }
            case MonadId::Reader: {
                auto outer = std::get<ReaderVal>(*rho.rep);
                auto e1 = std::get<ReaderVal>(extract(x, outer.a));
                auto e2 = std::get<ReaderVal>(extract(x, outer.b));
                if (n == 0) return ReaderVal{0, 0};
                return ReaderVal{tuple_index(x, std::vector<int>(n, e1.a)),
                                 tuple_index(x, std::vector<int>(n, e2.b))};
            }
            case MonadId::Hoare: {
                auto cs = x.closed_sets();
                Bits out(xn.size());
                for (int i : std::get<ClosedSet>(*rho.rep).s.members()) {
                    auto pts = cs[i].members();
                    if (n == 0) { out.set(0); continue; }
                    if (pts.empty()) continue;
                    std::vector<int> idx(n, 0);
                    while (true) {
                        std::vector<int> tup(n);
                        for (int k = 0; k < n; ++k) tup[k] = pts[idx[k]];
                        out.set(tuple_index(x, tup));
                        int k = n - 1;
                        while (k >= 0 && ++idx[k] == (int)pts.size()) idx[k--] = 0;
                        if (k < 0) break;
                    }
                }
                return ClosedSet{out};
            }
            default:
                throw std::logic_error("bad monad");
        }
    }

    // Is T1 isomorphic to 1, i.e. is the monad affine?
    bool affine() const {
        switch (id_) {
            case MonadId::Dist:
            case MonadId::Giry:
            case MonadId::Reader:
                return true;
            case MonadId::SubGiry: // M1 = [0,1]
            case MonadId::Maybe:   // 1 + 1
            case MonadId::Hoare:   // Sierpinski
                return false;
        }
        return false;
    }

    std::string elem_str(const FinSpace& x, const TElem& e) const {
        switch (id_) {
            case MonadId::Dist:
            case MonadId::Giry:
            case MonadId::SubGiry: {
                std::string out = "{";
                bool first = true;
                for (const auto& [c, q] : std::get<Measure>(e).w) {
                    if (!first) out += ", ";
                    out += cell_label(x, c) + ": " + rational_str(q);
                    first = false;
                }
                return out + "}";
            }
            case MonadId::Maybe: {
                auto m = std::get<MaybeVal>(e);
                return m.nothing() ? "Nothing" : x.label(m.v);
            }
            case MonadId::Reader: {
                auto r = std::get<ReaderVal>(e);
                return "(" + x.label(r.a) + "," + x.label(r.b) + ")";
            }
            case MonadId::Hoare:
                return x.set_label(std::get<ClosedSet>(e).s);
        }
        return "?";
    }

    std::string outer_str(const FinSpace& x, const Outer& rho) const {
        if (measure_style()) {
            std::string out = "{";
            bool first = true;
            for (const auto& [e, q] : rho.mix) {
                if (!first) out += ", ";
                out += elem_str(x, e) + ": " + rational_str(q);
                first = false;
            }
            return out + "}";
        }
        return elem_str(tspace(x), *rho.rep);
    }

private:
    Monad(MonadId id, std::string name, Kind base) : id_(id), name_(std::move(name)), base_(base) {}

    MonadId id_;
    std::string name_;
    Kind base_;
};

} // namespace elab

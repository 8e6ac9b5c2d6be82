#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <variant>
#include <vector>

#include "bits.hpp"
#include "rational.hpp"

namespace elab {

// Finitely supported rational measure. Support indices are "cells": atoms of
// the space for the Giry instances, points for the distribution monad.
// Canonical form: sorted by cell, no zero weights.
struct Measure {
    std::vector<std::pair<int, Rational>> w;

    void canonicalize() {
        std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Rational>> out;
        for (auto& [c, q] : w) {
            if (q == 0) continue;
            if (!out.empty() && out.back().first == c)
                out.back().second += q;
            else
                out.emplace_back(c, q);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }),
                  out.end());
        w = std::move(out);
    }
    Rational total() const {
        Rational t = 0;
        for (const auto& [c, q] : w) t += q;
        return t;
    }
    Rational at(int cell) const {
        for (const auto& [c, q] : w)
            if (c == cell) return q;
        return 0;
    }
    bool operator==(const Measure& o) const { return w == o.w; }
    bool operator<(const Measure& o) const { return w < o.w; }
};

// Element of the maybe monad: a point of the codomain, or nothing.
struct MaybeVal {
    int v = -1; // -1 encodes Nothing
    bool nothing() const { return v < 0; }
    bool operator==(const MaybeVal& o) const { return v == o.v; }
    bool operator<(const MaybeVal& o) const { return v < o.v; }
};

// Element of the read-only-state monad over the fixed 2-element environment:
// the value returned at each of the two environments.
struct ReaderVal {
    int a = 0, b = 0;
    bool operator==(const ReaderVal& o) const { return a == o.a && b == o.b; }
    bool operator<(const ReaderVal& o) const { return a != o.a ? a < o.a : b < o.b; }
};

// Element of the lower Vietoris monad: a closed subset of the space.
struct ClosedSet {
    Bits s;
    bool operator==(const ClosedSet& o) const { return s == o.s; }
    bool operator<(const ClosedSet& o) const { return s < o.s; }
};

using TElem = std::variant<Measure, MaybeVal, ReaderVal, ClosedSet>;

inline bool operator<(const TElem& a, const TElem& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return x < std::get<T>(b);
        },
        a);
}

// Element of TTX. Measure-monad instances use the finitely supported mixture
// over inner elements; instances whose TX is itself a finite space represent
// the outer directly as an element over that space.
struct Outer {
    std::vector<std::pair<TElem, Rational>> mix;
    std::optional<TElem> rep;

    static Outer mixture(std::vector<std::pair<TElem, Rational>> m) {
        Outer o;
        o.mix = std::move(m);
        o.canonicalize();
        return o;
    }
    static Outer represented(TElem e) {
        Outer o;
        o.rep = std::move(e);
        return o;
    }

    void canonicalize() {
        std::sort(mix.begin(), mix.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<TElem, Rational>> out;
        for (auto& [e, q] : mix) {
            if (q == 0) continue;
            if (!out.empty() && out.back().first == e)
                out.back().second += q;
            else
                out.emplace_back(e, q);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }),
                  out.end());
        mix = std::move(out);
    }
    Rational total() const {
        Rational t = 0;
        for (const auto& [e, q] : mix) t += q;
        return t;
    }
    bool operator==(const Outer& o) const { return mix == o.mix && rep == o.rep; }
    bool operator!=(const Outer& o) const { return !(*this == o); }
};

} // namespace elab

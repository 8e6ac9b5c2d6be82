#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace elab {

// Subset of a finite carrier, as a fixed-universe bitset. The universe size
// travels with the value so complements are well defined.
class Bits {
public:
    Bits() : n_(0) {}
    explicit Bits(int universe) : n_(universe), w_((universe + 63) / 64, 0) {
        if (universe < 0) throw std::invalid_argument("negative universe");
    }

    static Bits full(int universe) {
        Bits b(universe);
        for (int i = 0; i < universe; ++i) b.set(i);
        return b;
    }
    static Bits single(int universe, int i) {
        Bits b(universe);
        b.set(i);
        return b;
    }
    static Bits of(int universe, std::initializer_list<int> is) {
        Bits b(universe);
        for (int i : is) b.set(i);
        return b;
    }

    int universe() const { return n_; }

    void set(int i) { check(i); w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { check(i); w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { check(i); return (w_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (auto w : w_) if (w) return false;
        return true;
    }

    Bits operator|(const Bits& o) const { Bits r = zipcheck(o); for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i]; return r; }
    Bits operator&(const Bits& o) const { Bits r = zipcheck(o); for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i]; return r; }
    Bits operator-(const Bits& o) const { Bits r = zipcheck(o); for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i]; return r; }
    Bits complement() const {
        Bits r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool subset_of(const Bits& o) const {
        zipcheck(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const Bits& o) const {
        zipcheck(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }
    // Order by cardinality first, then by bit pattern; gives a deterministic
    // canonical enumeration order for families of sets.
    bool operator<(const Bits& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        int a = count(), b = o.count();
        if (a != b) return a < b;
        for (size_t i = w_.size(); i-- > 0;)
            if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
        return false;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

private:
    void check(int i) const {
        if (i < 0 || i >= n_) throw std::out_of_range("bit index " + std::to_string(i));
    }
    Bits zipcheck(const Bits& o) const {
        if (n_ != o.n_) throw std::invalid_argument("bitset universe mismatch");
        return Bits(n_);
    }
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    int n_;
    std::vector<std::uint64_t> w_;
};

} // namespace elab

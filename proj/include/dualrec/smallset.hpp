#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace dualrec {

// Set of small non-negative integers stored as one 64-bit word. Tagged so
// that sets of complex vertices and sets of graph vertices (facet indices)
// are distinct types and cannot be mixed up.
template <typename Tag>
struct SmallSet {
    static constexpr int capacity = 64;

    std::uint64_t bits = 0;

    constexpr SmallSet() = default;
    constexpr explicit SmallSet(std::uint64_t raw) : bits(raw) {}

    static constexpr SmallSet of(std::initializer_list<int> xs) {
        SmallSet s;
        for (int x : xs) s.add(x);
        return s;
    }

    // {0, 1, ..., n-1}
    static constexpr SmallSet first_n(int n) {
        return SmallSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    static constexpr SmallSet single(int x) { return SmallSet(std::uint64_t{1} << x); }

    constexpr bool test(int x) const { return (bits >> x) & 1u; }
    constexpr void add(int x) { bits |= std::uint64_t{1} << x; }
    constexpr void remove(int x) { bits &= ~(std::uint64_t{1} << x); }

    constexpr int count() const { return std::popcount(bits); }
    constexpr bool empty() const { return bits == 0; }
    constexpr int min() const { return std::countr_zero(bits); }

    constexpr bool contains(SmallSet other) const { return (other.bits & ~bits) == 0; }
    constexpr bool intersects(SmallSet other) const { return (bits & other.bits) != 0; }

    friend constexpr SmallSet operator|(SmallSet a, SmallSet b) { return SmallSet(a.bits | b.bits); }
    friend constexpr SmallSet operator&(SmallSet a, SmallSet b) { return SmallSet(a.bits & b.bits); }
    friend constexpr SmallSet operator-(SmallSet a, SmallSet b) { return SmallSet(a.bits & ~b.bits); }
    SmallSet& operator|=(SmallSet b) { bits |= b.bits; return *this; }
    SmallSet& operator&=(SmallSet b) { bits &= b.bits; return *this; }

    friend constexpr bool operator==(SmallSet a, SmallSet b) { return a.bits == b.bits; }
    friend constexpr bool operator!=(SmallSet a, SmallSet b) { return a.bits != b.bits; }
    // Order by raw word; stable for containers. Use lex_less for output order.
    friend constexpr bool operator<(SmallSet a, SmallSet b) { return a.bits < b.bits; }

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint64_t m = bits; m;) {
            int x = std::countr_zero(m);
            m &= m - 1;
            f(x);
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](int x) { out.push_back(x); });
        return out;
    }
};

// Lexicographic order on the ascending element lists; this is the canonical
// order used by the JSON emitters.
template <typename Tag>
bool lex_less(SmallSet<Tag> a, SmallSet<Tag> b) {
    while (a.bits != 0 && b.bits != 0) {
        int x = a.min(), y = b.min();
        if (x != y) return x < y;
        a.remove(x);
        b.remove(y);
    }
    return a.bits == 0 && b.bits != 0;
}

// Visits every subset of `mask`, the full mask first and the empty set last.
template <typename Tag, typename F>
void for_each_subset(SmallSet<Tag> mask, F&& f) {
    std::uint64_t m = mask.bits;
    std::uint64_t s = m;
    while (true) {
        f(SmallSet<Tag>(s));
        if (s == 0) break;
        s = (s - 1) & m;
    }
}

// Visits every k-element subset of `mask`.
template <typename Tag, typename F>
void for_each_k_subset(SmallSet<Tag> mask, int k, F&& f) {
    std::vector<int> elems = mask.to_vector();
    const int n = static_cast<int>(elems.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        SmallSet<Tag> s;
        for (int i : idx) s.add(elems[static_cast<std::size_t>(i)]);
        f(s);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

struct FaceTag {};
struct VertexSetTag {};

// A face of a simplicial complex: a set of vertex ids (< 64).
using Face = SmallSet<FaceTag>;
// A set of facet-ridge graph vertices, i.e. facet indices.
using VertexSet = SmallSet<VertexSetTag>;

template <typename Tag>
struct SmallSetHash {
    std::size_t operator()(SmallSet<Tag> s) const noexcept {
        return std::hash<std::uint64_t>{}(s.bits * 0x9e3779b97f4a7c15ull);
    }
};

} // namespace dualrec

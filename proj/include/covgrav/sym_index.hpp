#pragma once

// Symmetric-index bookkeeping for rank-2 metric pairs and ordered derivative
// multi-indices on a 4-dimensional base. All tensors symmetric in a pair of
// indices are stored once per ordered pair; accessors symmetrize.

#include <array>
#include <stdexcept>

namespace covgrav {

inline constexpr int kDim = 4;
inline constexpr int kNumPairs = 10;    // ordered (a,b), a <= b < 4
inline constexpr int kNumTriples = 20;  // ordered (a,b,c), a <= b <= c < 4

struct SymPair {
    int first;
    int second;
    int mult;  // 1 on the diagonal, 2 off-diagonal
};

inline void check_index(int a) {
    if (a < 0 || a >= kDim) throw std::out_of_range("tensor index out of range [0,3]");
}

inline SymPair normalize_pair(int a, int b) {
    check_index(a);
    check_index(b);
    if (a > b) std::swap(a, b);
    return SymPair{a, b, a == b ? 1 : 2};
}

// idx = a*(7-a)/2 + b for a <= b; enumerates (0,0),(0,1),...,(3,3)
inline int pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    return a * (7 - a) / 2 + b;
}

inline int pair_mult(int a, int b) { return a == b ? 1 : 2; }

inline constexpr std::array<std::array<int, 2>, kNumPairs> kPairList = {{
    {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3},
}};

inline constexpr std::array<int, kNumPairs> kPairMult = {1, 2, 2, 2, 1, 2, 2, 1, 2, 1};

namespace detail {
constexpr std::array<std::array<int, 3>, kNumTriples> make_triple_list() {
    std::array<std::array<int, 3>, kNumTriples> t{};
    int k = 0;
    for (int a = 0; a < kDim; ++a)
        for (int b = a; b < kDim; ++b)
            for (int c = b; c < kDim; ++c) t[k++] = {a, b, c};
    return t;
}
constexpr std::array<std::array<std::array<int, 4>, 4>, 4> make_triple_lookup() {
    std::array<std::array<std::array<int, 4>, 4>, 4> lut{};
    const auto list = make_triple_list();
    for (int i = 0; i < kNumTriples; ++i) {
        const auto& t = list[i];
        lut[t[0]][t[1]][t[2]] = i;
    }
    return lut;
}
}  // namespace detail

inline constexpr std::array<std::array<int, 3>, kNumTriples> kTripleList = detail::make_triple_list();

inline int triple_index(int a, int b, int c) {
    static constexpr auto lut = detail::make_triple_lookup();
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return lut[a][b][c];
}

}  // namespace covgrav

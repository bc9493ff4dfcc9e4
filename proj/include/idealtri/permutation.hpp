#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace idealtri {

/// Permutation of the vertex labels {0,1,2,3} of a tetrahedron, stored as the
/// image tuple (p(0), p(1), p(2), p(3)).
class VertexPermutation {
public:
    constexpr VertexPermutation() noexcept : images_{0, 1, 2, 3} {}
    constexpr explicit VertexPermutation(std::array<int, 4> images) noexcept : images_{images} {}

    static constexpr VertexPermutation identity() noexcept { return {}; }

    /// Parses a four-digit image string such as "1023". Returns nullopt unless
    /// the digits form a bijection of {0,1,2,3}.
    static std::optional<VertexPermutation> parse(std::string_view text) {
        if (text.size() != 4)
            return std::nullopt;
        std::array<int, 4> images{};
        for (int i = 0; i < 4; ++i) {
            if (text[i] < '0' || text[i] > '3')
                return std::nullopt;
            images[i] = text[i] - '0';
        }
        VertexPermutation p{images};
        if (!p.is_bijection())
            return std::nullopt;
        return p;
    }

    constexpr int operator[](int v) const noexcept { return images_[v]; }
    constexpr const std::array<int, 4>& images() const noexcept { return images_; }

    constexpr bool is_bijection() const noexcept {
        unsigned seen = 0;
        for (int v : images_) {
            if (v < 0 || v > 3)
                return false;
            seen |= 1u << v;
        }
        return seen == 0xFu;
    }

    /// +1 for even permutations, -1 for odd ones.
    constexpr int sign() const noexcept {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (images_[i] > images_[j])
                    ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }
    constexpr bool is_odd() const noexcept { return sign() < 0; }

    constexpr VertexPermutation inverse() const noexcept {
        std::array<int, 4> inv{};
        for (int i = 0; i < 4; ++i)
            inv[images_[i]] = i;
        return VertexPermutation{inv};
    }

    /// (p * q)(v) = p(q(v)).
    friend constexpr VertexPermutation operator*(const VertexPermutation& p, const VertexPermutation& q) noexcept {
        std::array<int, 4> out{};
        for (int i = 0; i < 4; ++i)
            out[i] = p[q[i]];
        return VertexPermutation{out};
    }

    std::string to_string() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i)
            s[i] = static_cast<char>('0' + images_[i]);
        return s;
    }

    friend constexpr bool operator==(const VertexPermutation&, const VertexPermutation&) = default;
    friend constexpr auto operator<=>(const VertexPermutation&, const VertexPermutation&) = default;

private:
    std::array<int, 4> images_;
};

/// All 24 permutations in lexicographic order of their image tuples.
inline const std::array<VertexPermutation, 24>& all_permutations() {
    static const std::array<VertexPermutation, 24> perms = [] {
        std::array<VertexPermutation, 24> out{};
        std::array<int, 4> images{0, 1, 2, 3};
        int k = 0;
        do {
            out[k++] = VertexPermutation{images};
        } while (std::next_permutation(images.begin(), images.end()));
        return out;
    }();
    return perms;
}

}  // namespace idealtri

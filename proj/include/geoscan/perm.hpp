#ifndef GEOSCAN_PERM_HPP_
#define GEOSCAN_PERM_HPP_

#include <array>
#include <cstdint>

namespace geoscan {

/// A permutation of the tetrahedron vertex labels {0,1,2,3}.
class Perm4 {
public:
    constexpr Perm4() : image_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d) : image_{a, b, c, d} {}
    explicit constexpr Perm4(std::array<int, 4> images) : image_(images) {}

    constexpr int operator[](int i) const { return image_[static_cast<std::size_t>(i)]; }

    constexpr Perm4 inverse() const {
        std::array<int, 4> inv{};
        for (int i = 0; i < 4; ++i) inv[static_cast<std::size_t>(image_[static_cast<std::size_t>(i)])] = i;
        return Perm4(inv);
    }

    /// (this ∘ other)(i) = this[other[i]]
    constexpr Perm4 compose(Perm4 other) const {
        std::array<int, 4> out{};
        for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = (*this)[other[i]];
        return Perm4(out);
    }

    constexpr int sign() const {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (image_[static_cast<std::size_t>(i)] > image_[static_cast<std::size_t>(j)]) ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }

    constexpr bool is_bijection() const {
        unsigned seen = 0;
        for (int v : image_) {
            if (v < 0 || v > 3) return false;
            seen |= 1u << v;
        }
        return seen == 0xFu;
    }

    constexpr const std::array<int, 4>& images() const { return image_; }

    friend constexpr bool operator==(const Perm4&, const Perm4&) = default;

private:
    std::array<int, 4> image_;
};

/// Sign of the permutation (a,b,c,d) of {0,1,2,3}.
constexpr int permutation_sign(int a, int b, int c, int d) { return Perm4(a, b, c, d).sign(); }

}  // namespace geoscan

#endif  // GEOSCAN_PERM_HPP_

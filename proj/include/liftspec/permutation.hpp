#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace liftspec {

/// A permutation of the points 1..degree.
///
/// Points are written to the LEFT of the permutation and products are read
/// left to right: p^(a*b) = (p^a)^b. Internally points are 0-based.
class Permutation {
public:
    /// Identity on `degree` points.
    explicit Permutation(std::size_t degree = 1);

    /// From 0-based images; throws ParseError unless `images` is a bijection.
    static Permutation from_images(std::vector<int> images);

    /// From 1-based images as written in the usual one-line notation.
    static Permutation from_one_based(const std::vector<int>& images);

    std::size_t degree() const { return images_.size(); }

    /// Image of the 0-based point `p`.
    int operator()(int p) const { return images_[static_cast<std::size_t>(p)]; }

    const std::vector<int>& images() const { return images_; }
    std::vector<int> one_based_images() const;

    bool is_identity() const;

    /// Apply *this first, then `rhs`.
    Permutation operator*(const Permutation& rhs) const;
    Permutation inverse() const;

    /// Disjoint-cycle form, 1-based, each cycle led by its smallest point,
    /// cycles ordered by leading point; "()" for the identity.
    std::string to_cycle_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
        return a.images_ <=> b.images_;
    }

private:
    std::vector<int> images_;
};

/// Parses disjoint-cycle notation such as "(1 2)(3 4)" or "()".
/// Throws ParseError on malformed text, repeated points or points outside
/// 1..degree.
Permutation parse_permutation(std::string_view text, std::size_t degree);

}  // namespace liftspec

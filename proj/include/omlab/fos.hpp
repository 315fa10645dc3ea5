#pragma once

/// @file fos.hpp
/// @brief Family-of-subsets linkage models.
///
/// A `Mask` is a set of gene positions exchanged atomically during mixing. A
/// `Fos` is an ordered list of masks whose union is the whole index set
/// {0, ..., ell-1}. Mask order inside a Fos is significant and duplicates are
/// allowed. Indices are 0-based in memory; the text format is 1-based.

#include "omlab/chromosome.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace omlab {

class Mask {
public:
    /// Throws InvalidParameter on an empty list or repeated index. Stored sorted.
    explicit Mask(std::vector<std::size_t> indices);

    std::size_t size() const noexcept { return indices_.size(); }
    std::span<const std::size_t> indices() const noexcept { return indices_; }
    std::size_t operator[](std::size_t i) const noexcept { return indices_[i]; }
    bool contains(std::size_t index) const noexcept;

    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    friend bool operator==(const Mask&, const Mask&) = default;

private:
    std::vector<std::size_t> indices_;
};

class Permutation {
public:
    /// Throws InvalidParameter unless `mapping` is a bijection on {0, ..., size-1}.
    explicit Permutation(std::vector<std::size_t> mapping);
    static Permutation identity(std::size_t size);

    std::size_t size() const noexcept { return mapping_.size(); }
    std::size_t operator[](std::size_t j) const noexcept { return mapping_[j]; }

private:
    std::vector<std::size_t> mapping_;
};

/// Outcome of checking a candidate family of subsets against an index set.
struct FosReport {
    std::vector<std::size_t> uncovered;
    std::vector<std::size_t> out_of_range;
    /// Positions (in the mask list) of masks that repeat an index.
    std::vector<std::size_t> masks_with_repeats;
    /// Positions of empty masks.
    std::vector<std::size_t> empty_masks;

    bool ok() const noexcept {
        return uncovered.empty() && out_of_range.empty() && masks_with_repeats.empty() && empty_masks.empty();
    }
    /// One-line description, 1-based like the text format.
    std::string message() const;
};

FosReport validate_fos(std::size_t ell, std::span<const std::vector<std::size_t>> masks);

class Fos {
public:
    /// Throws InvalidParameter carrying the FosReport message when invalid.
    Fos(std::size_t ell, std::vector<Mask> masks);

    std::size_t ell() const noexcept { return ell_; }
    std::size_t size() const noexcept { return masks_.size(); }
    std::span<const Mask> masks() const noexcept { return masks_; }
    const Mask& operator[](std::size_t i) const noexcept { return masks_[i]; }

    auto begin() const noexcept { return masks_.begin(); }
    auto end() const noexcept { return masks_.end(); }

    /// True when no index appears in two masks.
    bool is_disjoint() const;
    std::vector<std::size_t> mask_sizes() const;

    friend bool operator==(const Fos&, const Fos&) = default;

private:
    std::size_t ell_;
    std::vector<Mask> masks_;
};

FosReport validate_fos(const Fos& fos);

/// ell/k disjoint masks of size k; mask i holds perm[i*k .. i*k+k-1].
Fos make_homogeneous_fos(std::size_t ell, std::size_t k, const std::optional<Permutation>& perm = std::nullopt);

/// Concatenation preserving order. All parts must share ell.
Fos concat_fos(std::span<const Fos> parts);

/// `dest` with the positions of `mask` overwritten by `src`.
Chromosome copy_fragment(const Chromosome& dest, const Chromosome& src, const Mask& mask);

// Text format: one mask per line, 1-based indices separated by commas,
// '#' starts a comment, blank lines are ignored.
Fos parse_fos_text(std::string_view text, std::size_t ell);
Fos read_fos_file(const std::string& path, std::size_t ell);
std::string format_fos_text(const Fos& fos);

/// Resolves a FOS shorthand: "f_k" (homogeneous with the given k), "f_k,1",
/// or explicit sizes such as "f_5", "f_5,1", "f_3,6,2". Any "k" token is
/// replaced by `k`.
Fos fos_from_name(std::string_view name, std::size_t ell, std::size_t k);

}  // namespace omlab

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace omlab {

using Allele = std::uint8_t;

/// Fixed-length allele vector. Alleles are in [0, chi); the benchmarks use chi = 2.
class Chromosome {
public:
    Chromosome() = default;
    explicit Chromosome(std::size_t length, Allele fill = 0) : alleles_(length, fill) {}
    explicit Chromosome(std::vector<Allele> alleles) : alleles_(std::move(alleles)) {}

    /// Parses a digit string such as "01101".
    static Chromosome from_string(std::string_view digits);

    std::size_t size() const noexcept { return alleles_.size(); }
    Allele operator[](std::size_t i) const noexcept { return alleles_[i]; }
    Allele& operator[](std::size_t i) noexcept { return alleles_[i]; }

    std::span<const Allele> alleles() const noexcept { return alleles_; }
    std::span<Allele> alleles() noexcept { return alleles_; }

    std::string to_string() const;

    friend bool operator==(const Chromosome&, const Chromosome&) = default;

private:
    std::vector<Allele> alleles_;
};

}  // namespace omlab

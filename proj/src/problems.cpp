#include "omlab/problems.hpp"

#include "omlab/error.hpp"

#include <algorithm>
#include <numeric>

namespace omlab {

Chromosome Chromosome::from_string(std::string_view digits) {
    std::vector<Allele> alleles;
    alleles.reserve(digits.size());
    for (char c : digits) {
        require(c >= '0' && c <= '9', "chromosome string must contain digits only");
        alleles.push_back(static_cast<Allele>(c - '0'));
    }
    return Chromosome(std::move(alleles));
}

std::string Chromosome::to_string() const {
    std::string out;
    out.reserve(alleles_.size());
    for (Allele a : alleles_) out += static_cast<char>('0' + a);
    return out;
}

std::string_view to_string(ProblemKind kind) noexcept {
    switch (kind) {
    case ProblemKind::onemax: return "onemax";
    case ProblemKind::royal_road: return "royal";
    case ProblemKind::trap: return "trap";
    }
    return "?";
}

ProblemKind parse_problem_kind(std::string_view name) {
    if (name == "onemax") return ProblemKind::onemax;
    if (name == "royal" || name == "royal_road") return ProblemKind::royal_road;
    if (name == "trap") return ProblemKind::trap;
    throw InvalidParameter("unknown problem '" + std::string(name) + "' (expected onemax, royal or trap)");
}

namespace {

std::size_t count_ones(const Chromosome& x, const Mask& block) noexcept {
    std::size_t ones = 0;
    for (std::size_t g : block) ones += x[g] == 1;
    return ones;
}

}  // namespace

double eval_onemax(const Chromosome& x) {
    return static_cast<double>(std::count(x.alleles().begin(), x.alleles().end(), Allele{1}));
}

double eval_royal_road(const Chromosome& x, const Fos& structure) {
    double total = 0.0;
    for (const Mask& block : structure) total += count_ones(x, block) == block.size() ? 1.0 : 0.0;
    return total;
}

double trap_block_value(std::size_t ones, std::size_t size) noexcept {
    if (ones == size) return 1.0;
    return 0.9 * static_cast<double>(size - 1 - ones) / static_cast<double>(size - 1);
}

double eval_trap(const Chromosome& x, const Fos& structure) {
    double total = 0.0;
    for (const Mask& block : structure) {
        require(block.size() >= 2, "trap block of size 1 is undefined");
        total += trap_block_value(count_ones(x, block), block.size());
    }
    return total;
}

Problem::Problem(ProblemKind kind, Fos structure)
    : kind_(kind), structure_(std::move(structure)), block_of_(structure_.ell()) {
    require(structure_.is_disjoint(), "problem block structure must be disjoint");
    for (std::size_t b = 0; b < structure_.size(); ++b)
        for (std::size_t g : structure_[b]) block_of_[g] = b;
    if (kind_ == ProblemKind::trap) {
        std::int64_t l = 1;
        for (const Mask& block : structure_) {
            l = std::lcm(l, static_cast<std::int64_t>(block.size() - 1));
            require(l < (std::int64_t{1} << 40), "trap block sizes have too large a common multiple");
        }
        scale_ = 10 * l;
    }
}

Problem Problem::onemax(std::size_t ell) { return Problem(ProblemKind::onemax, make_homogeneous_fos(ell, 1)); }

Problem Problem::royal_road(Fos structure) { return Problem(ProblemKind::royal_road, std::move(structure)); }

Problem Problem::trap(Fos structure) {
    for (const Mask& block : structure) require(block.size() >= 2, "trap block of size 1 is undefined");
    return Problem(ProblemKind::trap, std::move(structure));
}

Problem Problem::make(ProblemKind kind, std::size_t ell, std::size_t k) {
    switch (kind) {
    case ProblemKind::onemax: return onemax(ell);
    case ProblemKind::royal_road: return royal_road(make_homogeneous_fos(ell, k));
    case ProblemKind::trap: return trap(make_homogeneous_fos(ell, k));
    }
    throw InvalidParameter("unknown problem kind");
}

std::int64_t Problem::block_score(std::size_t block, const Chromosome& x) const noexcept {
    const Mask& mask = structure_[block];
    const auto ones = static_cast<std::int64_t>(count_ones(x, mask));
    const auto size = static_cast<std::int64_t>(mask.size());
    switch (kind_) {
    case ProblemKind::onemax: return ones;
    case ProblemKind::royal_road: return ones == size ? 1 : 0;
    case ProblemKind::trap: return ones == size ? scale_ : 9 * (scale_ / 10 / (size - 1)) * (size - 1 - ones);
    }
    return 0;
}

double Problem::block_value(std::size_t block, const Chromosome& x) const noexcept {
    return to_fitness(block_score(block, x));
}

std::int64_t Problem::score(const Chromosome& x) const {
    require(x.size() == ell(), "chromosome length " + std::to_string(x.size()) + " does not match ell " +
                                   std::to_string(ell()));
    require(std::all_of(x.alleles().begin(), x.alleles().end(), [](Allele a) { return a < 2; }),
            "chromosome has a non-binary allele");
    std::int64_t total = 0;
    for (std::size_t b = 0; b < structure_.size(); ++b) total += block_score(b, x);
    return total;
}

double Problem::fitness(const Chromosome& x) const { return to_fitness(score(x)); }

double Problem::optimum_value() const noexcept {
    return kind_ == ProblemKind::onemax ? static_cast<double>(ell()) : static_cast<double>(block_count());
}

double evaluate(const Problem& p, const Chromosome& x, EvalLedger& ledger, EvalPhase phase) {
    const double f = p.fitness(x);
    ledger.record(phase);
    return f;
}

std::int64_t evaluate_score(const Problem& p, const Chromosome& x, EvalLedger& ledger, EvalPhase phase) {
    const std::int64_t s = p.score(x);
    ledger.record(phase);
    return s;
}

}  // namespace omlab

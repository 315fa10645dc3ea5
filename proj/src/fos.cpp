#include "omlab/fos.hpp"

#include "omlab/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace omlab {

namespace {

std::string join_one_based(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i] + 1);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::size_t parse_size(std::string_view token, std::string_view context) {
    token = trim(token);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
        throw InvalidParameter("malformed integer '" + std::string(token) + "' in " + std::string(context));
    return value;
}

}  // namespace

Mask::Mask(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    require(!indices_.empty(), "mask must contain at least one index");
    std::sort(indices_.begin(), indices_.end());
    require(std::adjacent_find(indices_.begin(), indices_.end()) == indices_.end(),
            "mask repeats an index");
}

bool Mask::contains(std::size_t index) const noexcept {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
    std::vector<std::size_t> sorted = mapping_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        require(sorted[i] == i, "permutation is not a bijection on {0..ell-1}");
}

Permutation Permutation::identity(std::size_t size) {
    std::vector<std::size_t> mapping(size);
    std::iota(mapping.begin(), mapping.end(), std::size_t{0});
    return Permutation(std::move(mapping));
}

std::string FosReport::message() const {
    if (ok()) return "ok";
    std::string out = "invalid FOS:";
    if (!uncovered.empty()) out += " uncovered indices " + join_one_based(uncovered) + ";";
    if (!out_of_range.empty()) out += " out-of-range indices " + join_one_based(out_of_range) + ";";
    if (!masks_with_repeats.empty()) out += " masks repeating an index " + join_one_based(masks_with_repeats) + ";";
    if (!empty_masks.empty()) out += " empty masks " + join_one_based(empty_masks) + ";";
    out.pop_back();
    return out;
}

FosReport validate_fos(std::size_t ell, std::span<const std::vector<std::size_t>> masks) {
    FosReport report;
    std::vector<bool> covered(ell, false);
    for (std::size_t m = 0; m < masks.size(); ++m) {
        const auto& mask = masks[m];
        if (mask.empty()) report.empty_masks.push_back(m);
        std::vector<std::size_t> sorted = mask;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) report.masks_with_repeats.push_back(m);
        for (std::size_t index : mask) {
            if (index < ell)
                covered[index] = true;
            else
                report.out_of_range.push_back(index);
        }
    }
    for (std::size_t i = 0; i < ell; ++i)
        if (!covered[i]) report.uncovered.push_back(i);
    std::sort(report.out_of_range.begin(), report.out_of_range.end());
    report.out_of_range.erase(std::unique(report.out_of_range.begin(), report.out_of_range.end()),
                              report.out_of_range.end());
    return report;
}

FosReport validate_fos(const Fos& fos) {
    std::vector<std::vector<std::size_t>> raw;
    raw.reserve(fos.size());
    for (const Mask& mask : fos) raw.emplace_back(mask.begin(), mask.end());
    return validate_fos(fos.ell(), raw);
}

Fos::Fos(std::size_t ell, std::vector<Mask> masks) : ell_(ell), masks_(std::move(masks)) {
    require(ell_ >= 1, "FOS length must be at least 1");
    const FosReport report = validate_fos(*this);
    require(report.ok(), report.message());
}

bool Fos::is_disjoint() const {
    std::vector<bool> seen(ell_, false);
    for (const Mask& mask : masks_)
        for (std::size_t index : mask) {
            if (seen[index]) return false;
            seen[index] = true;
        }
    return true;
}

std::vector<std::size_t> Fos::mask_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(masks_.size());
    for (const Mask& mask : masks_) sizes.push_back(mask.size());
    return sizes;
}

Fos make_homogeneous_fos(std::size_t ell, std::size_t k, const std::optional<Permutation>& perm) {
    require(k >= 1 && ell >= 1, "homogeneous FOS needs ell >= 1 and k >= 1");
    require(ell % k == 0, "mask size k=" + std::to_string(k) + " does not divide ell=" + std::to_string(ell));
    require(!perm || perm->size() == ell, "permutation size does not match ell");
    std::vector<Mask> masks;
    masks.reserve(ell / k);
    for (std::size_t i = 0; i < ell / k; ++i) {
        std::vector<std::size_t> indices(k);
        for (std::size_t j = 0; j < k; ++j) indices[j] = perm ? (*perm)[i * k + j] : i * k + j;
        masks.emplace_back(std::move(indices));
    }
    return Fos(ell, std::move(masks));
}

Fos concat_fos(std::span<const Fos> parts) {
    require(!parts.empty(), "concat_fos needs at least one part");
    const std::size_t ell = parts.front().ell();
    std::vector<Mask> masks;
    for (const Fos& part : parts) {
        require(part.ell() == ell, "concat_fos parts disagree on ell");
        masks.insert(masks.end(), part.begin(), part.end());
    }
    return Fos(ell, std::move(masks));
}

Chromosome copy_fragment(const Chromosome& dest, const Chromosome& src, const Mask& mask) {
    require(dest.size() == src.size(), "copy_fragment: chromosome lengths differ");
    require(mask.indices().back() < dest.size(), "copy_fragment: mask out of range");
    Chromosome out = dest;
    for (std::size_t index : mask) out[index] = src[index];
    return out;
}

Fos parse_fos_text(std::string_view text, std::size_t ell) {
    std::vector<std::vector<std::size_t>> raw;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string context = "FOS line " + std::to_string(line_no);
        std::vector<std::size_t> indices;
        while (true) {
            const auto comma = line.find(',');
            const std::size_t one_based = parse_size(line.substr(0, comma), context);
            if (one_based == 0) throw InvalidParameter("index 0 in " + context + " (indices are 1-based)");
            indices.push_back(one_based - 1);
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        raw.push_back(std::move(indices));
    }
    const FosReport report = validate_fos(ell, raw);
    require(report.ok(), report.message());
    std::vector<Mask> masks;
    masks.reserve(raw.size());
    for (auto& indices : raw) masks.emplace_back(std::move(indices));
    return Fos(ell, std::move(masks));
}

Fos read_fos_file(const std::string& path, std::size_t ell) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open FOS file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_fos_text(buffer.str(), ell);
}

std::string format_fos_text(const Fos& fos) {
    std::string out;
    for (const Mask& mask : fos) {
        out += join_one_based(std::vector<std::size_t>(mask.begin(), mask.end()));
        out += '\n';
    }
    return out;
}

Fos fos_from_name(std::string_view name, std::size_t ell, std::size_t k) {
    name = trim(name);
    if (name.size() < 3 || name.substr(0, 2) != "f_")
        throw InvalidParameter("unknown FOS name '" + std::string(name) + "' (expected f_k, f_k,1 or f_<sizes>)");
    std::vector<Fos> parts;
    std::string_view rest = name.substr(2);
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view token = trim(rest.substr(0, comma));
        const std::size_t size = token == "k" ? k : parse_size(token, "FOS name '" + std::string(name) + "'");
        parts.push_back(make_homogeneous_fos(ell, size));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return concat_fos(parts);
}

}  // namespace omlab

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sp8d/symbol.hpp"

namespace sp8d {

struct ClassCensus {
    int pb = 0;
    int pa = 0;
    int pi = 0;

    int& of(PartitionClass c) {
        switch (c) {
            case PartitionClass::PB: return pb;
            case PartitionClass::PA: return pa;
            default: return pi;
        }
    }
    int total() const { return pb + pa + pi; }
    bool operator==(const ClassCensus&) const = default;
};

inline ClassCensus partition_census(const std::vector<Symbol8D>& symbols) {
    ClassCensus c;
    for (const auto& s : symbols) ++c.of(classify(s));
    return c;
}

/// Immutable labeled symbol set with format metadata. Construct via
/// the factory functions in formats.hpp.
class Constellation {
public:
    Constellation(std::string name, std::vector<Symbol8D> symbols, int info_bits,
                  std::vector<BitWord> info_words)
        : name_(std::move(name)),
          symbols_(std::move(symbols)),
          info_bits_(info_bits),
          info_words_(std::move(info_words)) {
        if (symbols_.size() != info_words_.size())
            throw std::invalid_argument("Constellation: info word per symbol required");
        if (symbols_.size() != (std::size_t{1} << info_bits_))
            throw std::invalid_argument("Constellation: |symbols| != 2^info_bits");
        index_by_label_.reserve(symbols_.size());
        index_by_info_.assign(symbols_.size(), SIZE_MAX);
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (!index_by_label_.emplace(symbols_[i].label.value(), i).second)
                throw std::invalid_argument("Constellation: duplicate label");
            const std::size_t w = info_words_[i].value();
            if (index_by_info_[w] != SIZE_MAX)
                throw std::invalid_argument("Constellation: duplicate info word");
            index_by_info_[w] = i;
        }
        census_ = partition_census(symbols_);
        dmin_sq_ = symbols_.size() >= 2 ? min_distance_sq_brute(symbols_) : 0.0;
    }

    const std::string& name() const { return name_; }
    const std::vector<Symbol8D>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    int info_bits() const { return info_bits_; }
    const ClassCensus& census() const { return census_; }
    double dmin_sq() const { return dmin_sq_; }

    /// Spectral efficiency in information bits per 4D symbol (one slot).
    double se_per_4d() const { return info_bits_ / 2.0; }

    const Symbol8D& symbol(std::size_t i) const { return symbols_.at(i); }
    const BitWord& info_word(std::size_t i) const { return info_words_.at(i); }

    std::size_t index_of_info(const BitWord& info) const {
        if (info.length() != info_bits_)
            throw std::invalid_argument("Constellation: info word length mismatch");
        return index_by_info_[info.value()];
    }

    std::size_t index_of_label(const BitWord& label) const {
        auto it = index_by_label_.find(label.value());
        if (it == index_by_label_.end()) throw std::out_of_range("Constellation: unknown label");
        return it->second;
    }

    static double min_distance_sq_brute(const std::vector<Symbol8D>& symbols) {
        if (symbols.size() < 2)
            throw std::invalid_argument("min_distance_sq: need at least 2 symbols");
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i)
            for (std::size_t j = i + 1; j < symbols.size(); ++j)
                best = std::min(best, distance_sq(symbols[i], symbols[j]));
        return best;
    }

private:
    std::string name_;
    std::vector<Symbol8D> symbols_;
    int info_bits_;
    std::vector<BitWord> info_words_;
    std::unordered_map<std::uint32_t, std::size_t> index_by_label_;
    std::vector<std::size_t> index_by_info_;
    ClassCensus census_;
    double dmin_sq_ = 0.0;
};

inline double min_distance_sq(const Constellation& c) {
    if (c.size() < 2) throw std::invalid_argument("min_distance_sq: need at least 2 symbols");
    return c.dmin_sq();
}

/// Sorted squared distances from one point to all others.
inline std::vector<double> neighbor_profile(const Constellation& c, std::size_t point_index) {
    if (point_index >= c.size()) throw std::out_of_range("neighbor_profile: index");
    std::vector<double> d;
    d.reserve(c.size() - 1);
    for (std::size_t j = 0; j < c.size(); ++j)
        if (j != point_index) d.push_back(distance_sq(c.symbol(point_index), c.symbol(j)));
    std::sort(d.begin(), d.end());
    return d;
}

/// A constellation is symmetric when every point sees the same distance
/// multiset (constraint (b) of the partition design).
inline bool is_symmetric(const Constellation& c, double eps = 1e-9) {
    if (c.size() < 2) return true;
    const auto ref = neighbor_profile(c, 0);
    for (std::size_t i = 1; i < c.size(); ++i) {
        const auto p = neighbor_profile(c, i);
        for (std::size_t k = 0; k < ref.size(); ++k)
            if (std::abs(p[k] - ref[k]) > eps) return false;
    }
    return true;
}

}  // namespace sp8d

#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace sp8d {

/// Fixed-length binary word, b1 (most significant) first.
/// Backed by a uint32 so words up to 32 bits are cheap value types.
class BitWord {
public:
    BitWord() = default;

    BitWord(std::uint32_t value, int length) : value_(value), length_(length) {
        if (length < 0 || length > 32) throw std::invalid_argument("BitWord: bad length");
        if (length < 32 && (value >> length) != 0)
            throw std::invalid_argument("BitWord: value wider than length");
    }

    BitWord(std::initializer_list<int> bits) : length_(static_cast<int>(bits.size())) {
        if (length_ > 32) throw std::invalid_argument("BitWord: bad length");
        for (int b : bits) {
            if (b != 0 && b != 1) throw std::invalid_argument("BitWord: entries must be 0/1");
            value_ = (value_ << 1) | static_cast<std::uint32_t>(b);
        }
    }

    int length() const { return length_; }
    std::uint32_t value() const { return value_; }

    /// bit(1) is b1, the most significant bit.
    int bit(int i) const {
        if (i < 1 || i > length_) throw std::out_of_range("BitWord::bit");
        return static_cast<int>((value_ >> (length_ - i)) & 1u);
    }

    BitWord prefix(int n) const {
        if (n < 0 || n > length_) throw std::out_of_range("BitWord::prefix");
        return BitWord(value_ >> (length_ - n), n);
    }

    /// Concatenation: this becomes the high bits.
    BitWord concat(const BitWord& tail) const {
        if (length_ + tail.length_ > 32) throw std::invalid_argument("BitWord::concat overflow");
        return BitWord((value_ << tail.length_) | tail.value_, length_ + tail.length_);
    }

    BitWord operator^(const BitWord& o) const {
        if (o.length_ != length_) throw std::invalid_argument("BitWord: xor length mismatch");
        return BitWord(value_ ^ o.value_, length_);
    }

    bool operator==(const BitWord& o) const = default;

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(length_), '0');
        for (int i = 0; i < length_; ++i)
            if ((value_ >> (length_ - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

private:
    std::uint32_t value_ = 0;
    int length_ = 0;
};

}  // namespace sp8d

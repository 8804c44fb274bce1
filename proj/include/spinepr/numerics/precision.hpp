#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinepr {

/// Working mantissa precision plus the ceiling for doubling escalation.
class PrecisionContext {
 public:
  static constexpr unsigned kMinBits = 64;

  PrecisionContext() = default;
  explicit PrecisionContext(unsigned bits) : PrecisionContext(bits, bits) {}
  PrecisionContext(unsigned bits, unsigned max_bits) : bits_(bits), max_bits_(max_bits) {
    if (bits_ < kMinBits) {
      throw std::invalid_argument("precision must be at least 64 bits, got " + std::to_string(bits_));
    }
    if (max_bits_ < bits_) {
      throw std::invalid_argument("max_bits (" + std::to_string(max_bits_) + ") below bits (" +
                                  std::to_string(bits_) + ")");
    }
  }

  unsigned bits() const noexcept { return bits_; }
  unsigned max_bits() const noexcept { return max_bits_; }

  bool can_escalate() const noexcept { return bits_ < max_bits_; }

  /// Doubles the working precision, clamped to max_bits.
  PrecisionContext escalated() const {
    if (!can_escalate()) {
      throw std::logic_error("precision already at ceiling " + std::to_string(max_bits_));
    }
    const std::uint64_t next = std::uint64_t{bits_} * 2;
    return PrecisionContext(next > max_bits_ ? max_bits_ : static_cast<unsigned>(next), max_bits_);
  }

  /// Decimal digits carried by the mantissa.
  int decimal_digits() const noexcept { return static_cast<int>(bits_ * 0.30102999566398120); }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  unsigned bits_ = 256;
  unsigned max_bits_ = 256;
};

}  // namespace spinepr

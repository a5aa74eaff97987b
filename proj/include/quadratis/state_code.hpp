#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "quadratis/puzzle.hpp"

namespace quadratis {

// Canonical key of a configuration: a mixed-radix integer over the color
// indices (square 0 least significant) when K^N fits in 64 bits, otherwise
// the raw color bytes.
using StateCode = std::variant<std::uint64_t, std::string>;

class StateCodec {
 public:
  StateCodec(std::size_t num_squares, std::size_t num_colors);

  std::size_t num_squares() const { return num_squares_; }
  std::size_t num_colors() const { return num_colors_; }
  bool packed() const { return packed_; }

  StateCode encode(std::span<const ColorIndex> colors) const;
  StateCode encode(const Configuration& cfg) const { return encode(cfg.colors); }
  Configuration decode(const StateCode& code) const;

  // Only valid when packed().
  std::uint64_t pack(std::span<const ColorIndex> colors) const;
  void unpack(std::uint64_t code, std::span<ColorIndex> out) const;

 private:
  std::size_t num_squares_;
  std::size_t num_colors_;
  bool packed_;
};

}  // namespace quadratis

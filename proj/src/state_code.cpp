#include "quadratis/state_code.hpp"

#include <algorithm>

#include "quadratis/error.hpp"

namespace quadratis {

StateCodec::StateCodec(std::size_t num_squares, std::size_t num_colors)
    : num_squares_(num_squares), num_colors_(num_colors), packed_(true) {
  // Codes run up to K^N - 1, which fits in 64 bits iff K^N <= 2^64.
  const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 64;
  unsigned __int128 capacity = 1;
  for (std::size_t i = 0; i < num_squares_ && packed_; ++i) {
    capacity *= std::max<std::size_t>(num_colors_, 1);
    packed_ = capacity <= limit;
  }
}

std::uint64_t StateCodec::pack(std::span<const ColorIndex> colors) const {
  std::uint64_t code = 0;
  for (std::size_t i = num_squares_; i-- > 0;) code = code * num_colors_ + colors[i];
  return code;
}

void StateCodec::unpack(std::uint64_t code, std::span<ColorIndex> out) const {
  for (std::size_t i = 0; i < num_squares_; ++i) {
    out[i] = static_cast<ColorIndex>(code % num_colors_);
    code /= num_colors_;
  }
}

StateCode StateCodec::encode(std::span<const ColorIndex> colors) const {
  if (colors.size() != num_squares_) {
    throw Error(ErrorCode::ValidationError, "configuration length does not match the codec", "colors");
  }
  if (packed_) return pack(colors);
  return std::string(colors.begin(), colors.end());
}

Configuration StateCodec::decode(const StateCode& code) const {
  Configuration cfg{std::vector<ColorIndex>(num_squares_)};
  if (const auto* packed = std::get_if<std::uint64_t>(&code)) {
    unpack(*packed, cfg.colors);
  } else {
    const auto& bytes = std::get<std::string>(code);
    if (bytes.size() != num_squares_) throw Error(ErrorCode::ValidationError, "state code has the wrong length");
    for (std::size_t i = 0; i < num_squares_; ++i) cfg.colors[i] = static_cast<ColorIndex>(bytes[i]);
  }
  return cfg;
}

}  // namespace quadratis

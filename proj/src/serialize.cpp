#include "pamm/serialize.hpp"

#include <fstream>
#include <sstream>

namespace pamm {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof())
    throw invalid_input("cannot read file: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw invalid_input("cannot open file for writing: " + path);
  out << content;
  if (!out.good()) throw invalid_input("cannot write file: " + path);
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string canonicalize_decimal(const std::string& text) {
  try {
    return FixedPoint::from_string(text).to_string();
  } catch (const invalid_input&) {
    return format_double(parse_double(text));
  }
}

std::string params_hash(const std::string& theta_bar,
                        const std::string& alpha_bar_norm,
                        const std::string& xu_bar_norm) {
  const std::string canon = canonicalize_decimal(theta_bar) + "|" +
                            canonicalize_decimal(alpha_bar_norm) + "|" +
                            canonicalize_decimal(xu_bar_norm);
  const std::uint64_t h = fnv1a64(canon);
  static const char* kHex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i)
    out[static_cast<size_t>(15 - i)] = kHex[(h >> (4 * i)) & 0xF];
  return out;
}

}  // namespace pamm

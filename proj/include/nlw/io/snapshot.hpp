#ifndef NLW_IO_SNAPSHOT_HPP
#define NLW_IO_SNAPSHOT_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlw/core/rng.hpp"
#include "nlw/spectral/field.hpp"

namespace nlw {

// Snapshot file: one line of JSON header, then the coefficients of u and v as
// interleaved (re, im) binary64 little-endian, in grid layout order.

inline constexpr int snapshot_format_version = 1;

namespace detail {

inline std::uint64_t to_little(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::little) return x;
  std::uint64_t y = 0;
  for (int b = 0; b < 8; ++b) y |= ((x >> (8 * b)) & 0xffu) << (8 * (7 - b));
  return y;
}

inline std::string encode_coefficients(const StatePair& x) {
  std::string out;
  out.reserve(32 * x.u.size());
  for (const SpectralField* f : {&x.u, &x.v})
    for (cplx c : f->coeffs())
      for (double d : {c.real(), c.imag()}) {
        const std::uint64_t w = to_little(std::bit_cast<std::uint64_t>(d));
        char bytes[8];
        std::memcpy(bytes, &w, 8);
        out.append(bytes, 8);
      }
  return out;
}

inline std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace detail

inline std::string snapshot_bytes(const StatePair& x) {
  const ModeGrid& g = x.grid();
  const std::string payload = detail::encode_coefficients(x);
  nlohmann::ordered_json h;
  h["format"] = "nlw-snapshot";
  h["version"] = snapshot_format_version;
  h["dim"] = g.dim;
  h["M"] = g.modes;
  h["P"] = g.points;
  h["kind"] = "spectral";
  h["fields"] = {"u", "v"};
  h["endianness"] = "little";
  h["layout"] = "row-major, axis order 0..M/2-1, -M/2..-1, interleaved re/im";
  h["bytes"] = payload.size();
  h["checksum"] = "fnv1a64:" + detail::hex64(fnv1a64(payload));
  return h.dump() + "\n" + payload;
}

inline StatePair parse_snapshot(const std::string& bytes) {
  const auto nl = bytes.find('\n');
  require(nl != std::string::npos, errc::format_version_mismatch, "snapshot: missing header line");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(bytes.substr(0, nl));
  } catch (const nlohmann::json::exception& e) {
    fail(errc::format_version_mismatch, std::string("snapshot: header is not JSON: ") + e.what());
  }
  const auto field = [&](const char* key) -> const nlohmann::json& {
    require(h.contains(key), errc::format_version_mismatch, std::string("snapshot: header lacks '") + key + "'");
    return h[key];
  };
  require(field("format") == "nlw-snapshot" && field("version") == snapshot_format_version, errc::format_version_mismatch,
          "snapshot: unsupported format or version");
  require(field("kind") == "spectral" && field("endianness") == "little", errc::format_version_mismatch,
          "snapshot: only little-endian spectral snapshots are supported");
  const int dim = field("dim").get<int>();
  require(dim >= 1 && dim <= 3, errc::format_version_mismatch, "snapshot: header dim " + std::to_string(dim) + " is not 1, 2 or 3");
  ModeGrid g;
  try {
    g = ModeGrid(dim, field("M").get<int>(), field("P").get<int>());
  } catch (const error& e) {
    fail(errc::format_version_mismatch, std::string("snapshot: invalid grid in header: ") + e.what());
  }

  const std::string payload = bytes.substr(nl + 1);
  const std::size_t expected = 32 * g.mode_count();
  require(field("bytes").get<std::size_t>() == expected, errc::format_version_mismatch, "snapshot: byte count disagrees with grid");
  require(payload.size() == expected && field("checksum") == "fnv1a64:" + detail::hex64(fnv1a64(payload)), errc::checksum_mismatch,
          "snapshot: payload length or checksum mismatch (truncated or corrupted file)");

  StatePair x = StatePair::zero(g);
  std::size_t off = 0;
  const auto next = [&] {
    std::uint64_t w;
    std::memcpy(&w, payload.data() + off, 8);
    off += 8;
    return std::bit_cast<double>(detail::to_little(w));
  };
  for (SpectralField* f : {&x.u, &x.v})
    for (cplx& c : f->coeffs()) {
      const double re = next();
      c = cplx(re, next());
    }
  return x;
}

inline void write_snapshot(const std::string& path, const StatePair& x) {
  std::ofstream os(path, std::ios::binary);
  const std::string b = snapshot_bytes(x);
  os.write(b.data(), static_cast<std::streamsize>(b.size()));
  require(static_cast<bool>(os), errc::io_error, "snapshot: cannot write '" + path + "'");
}

inline StatePair read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), errc::io_error, "snapshot: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_snapshot(ss.str());
}

}  // namespace nlw

#endif

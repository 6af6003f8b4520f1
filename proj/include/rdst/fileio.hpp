#pragma once

#include <zlib.h>

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>

#include "rdst/errors.hpp"

namespace rdst {

namespace detail {

// Shortest decimal that round-trips the exact double.
inline void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace detail

inline bool has_gz_suffix(const std::string& path) {
  return path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

namespace detail {

inline std::string read_gzip(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw DataError("cannot open " + path);
  std::string out;
  char buf[1 << 16];
  int got;
  while ((got = gzread(f, buf, sizeof(buf))) > 0) {
    out.append(buf, static_cast<std::size_t>(got));
  }
  if (got < 0) {
    int errnum = 0;
    const char* msg = gzerror(f, &errnum);
    std::string detail = errnum == Z_ERRNO ? "read error" : msg;
    gzclose(f);
    throw DataError("cannot decompress " + path + ": " + detail);
  }
  gzclose(f);
  return out;
}

// Deterministic gzip bytes: zero mtime, fixed OS byte, default level.
inline void write_gzip(const std::string& path, const std::string& content) {
  std::string compressed;
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error("deflateInit2 failed");
  }
  gz_header header{};
  header.os = 3;
  deflateSetHeader(&zs, &header);
  compressed.resize(deflateBound(&zs, static_cast<uLong>(content.size())));
  zs.next_in =
      reinterpret_cast<Bytef*>(const_cast<char*>(content.data()));
  zs.avail_in = static_cast<uInt>(content.size());
  zs.next_out = reinterpret_cast<Bytef*>(compressed.data());
  zs.avail_out = static_cast<uInt>(compressed.size());
  const int rc = deflate(&zs, Z_FINISH);
  if (rc != Z_STREAM_END) {
    deflateEnd(&zs);
    throw Error("deflate failed with code " + std::to_string(rc));
  }
  compressed.resize(zs.total_out);
  deflateEnd(&zs);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(compressed.data(),
            static_cast<std::streamsize>(compressed.size()));
  if (!out) throw DataError("write to " + path + " failed");
}

}  // namespace detail

// Whole-file read; .gz paths are decompressed transparently.
inline std::string read_file(const std::string& path) {
  if (has_gz_suffix(path)) return detail::read_gzip(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError("read from " + path + " failed");
  return ss.str();
}

// Whole-file write; .gz paths are gzip-compressed with deterministic bytes.
inline void write_file(const std::string& path, const std::string& content) {
  if (has_gz_suffix(path)) {
    detail::write_gzip(path, content);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write to " + path + " failed");
}

}  // namespace rdst

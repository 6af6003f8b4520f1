#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rdst/rdst.hpp"

namespace testutil {

// scratch directory removed on scope exit; names never collide across
// processes or within one
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("rdst_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

// exact on-disk bytes, no gzip awareness
inline std::string raw_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

#ifdef RDST_CLI_PATH
struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const TempDir& dir, const std::string& args) {
  static int n = 0;
  const std::string out_path = dir.file("cli_out_" + std::to_string(n));
  const std::string err_path = dir.file("cli_err_" + std::to_string(n));
  ++n;
  const std::string cmd = std::string("\"") + RDST_CLI_PATH + "\" " + args +
                          " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  CliResult r;
  if (status >= 0 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = raw_bytes(out_path);
  r.err = raw_bytes(err_path);
  return r;
}
#endif

inline rdst::TimeSeries random_series(rdst::RngStream& rng, std::size_t m,
                                      double lo = -2.0, double hi = 2.0) {
  rdst::TimeSeries ts;
  ts.values.resize(m);
  for (double& v : ts.values) v = rng.uniform(lo, hi);
  return ts;
}

inline rdst::DilatedShapelet random_shapelet(rdst::RngStream& rng,
                                             std::size_t l, std::size_t d,
                                             bool normalized,
                                             double lambda = 0.0) {
  rdst::DilatedShapelet s;
  s.values.resize(l);
  for (double& v : s.values) v = rng.uniform(-2.0, 2.0);
  if (normalized) s.values = rdst::znormalize(s.values);
  s.dilation = d;
  s.normalized = normalized;
  s.lambda = lambda;
  return s;
}

inline rdst::LabeledDataset random_dataset(std::uint64_t seed, std::size_t n,
                                           std::size_t m, int n_classes) {
  std::vector<rdst::TimeSeries> series;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    rdst::RngStream rng(seed, i);
    series.push_back(random_series(rng, m));
    labels.push_back(static_cast<int>(i % static_cast<std::size_t>(n_classes)));
  }
  return rdst::make_dataset(std::move(series), std::move(labels));
}

}  // namespace testutil

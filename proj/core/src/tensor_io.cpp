// beamscan - phased-array channel sounding simulator and tensor analysis tools
// Copyright (C) 2026 beamscan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "beamscan/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace beamscan {

namespace {

constexpr char kMagic[4] = {'C', 'T', 'N', 'S'};

static_assert(std::endian::native == std::endian::little,
              "CTNS I/O assumes a little-endian host");

template <typename T> void put(std::ostream &os, T v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T> T get(std::istream &is) {
  T v{};
  is.read(reinterpret_cast<char *>(&v), sizeof(T));
  return v;
}

CtnsHeader read_header(std::istream &is, const std::string &path) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a CTNS file (bad magic): " + path);
  CtnsHeader h;
  h.version = get<std::uint32_t>(is);
  if (h.version != 1)
    throw std::runtime_error("unsupported CTNS version in " + path);
  h.n_dly = get<std::uint64_t>(is);
  h.n_dir = get<std::uint64_t>(is);
  h.n_scan = get<std::uint64_t>(is);
  if (!is || h.n_dly == 0 || h.n_dir == 0 || h.n_scan == 0)
    throw std::runtime_error("corrupt CTNS header (zero dims) in " + path);
  return h;
}

} // namespace

void write_ctns(const std::string &path, const ChannelTensor &t) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open for writing: " + path);
  os.write(kMagic, 4);
  put<std::uint32_t>(os, 1);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(t.n_dly()));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(t.n_dir()));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(t.n_scan()));
  // std::complex<double> is layout-compatible with double[2] (re, im).
  os.write(reinterpret_cast<const char *>(t.data().data()),
           static_cast<std::streamsize>(t.data().size() * sizeof(cplx)));
  if (!os)
    throw std::runtime_error("write failed: " + path);
}

ChannelTensor read_ctns(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open: " + path);
  const CtnsHeader h = read_header(is, path);
  const std::uint64_t n = h.n_dly * h.n_dir * h.n_scan;
  std::vector<cplx> data(n);
  is.read(reinterpret_cast<char *>(data.data()),
          static_cast<std::streamsize>(n * sizeof(cplx)));
  if (!is)
    throw std::runtime_error("truncated CTNS payload in " + path);
  return ChannelTensor(static_cast<Eigen::Index>(h.n_dly),
                       static_cast<Eigen::Index>(h.n_dir),
                       static_cast<Eigen::Index>(h.n_scan), std::move(data));
}

CtnsHeader read_ctns_header(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open: " + path);
  return read_header(is, path);
}

} // namespace beamscan

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

#ifndef BEAMSCAN_TENSOR_IO_HPP
#define BEAMSCAN_TENSOR_IO_HPP

#include "beamscan/tensor.hpp"

#include <cstdint>
#include <string>

namespace beamscan {

// CTNS file layout (little-endian):
//   bytes 0..3   magic "CTNS"
//   u32          version (currently 1)
//   u64 x 3      n_dly, n_dir, n_scan
//   then n_dly*n_dir*n_scan entries as (f64 re, f64 im), delay index
//   fastest, i.e. the mode-1 unfolding column by column.

struct CtnsHeader {
  std::uint32_t version = 1;
  std::uint64_t n_dly = 0;
  std::uint64_t n_dir = 0;
  std::uint64_t n_scan = 0;
};

void write_ctns(const std::string &path, const ChannelTensor &t);

ChannelTensor read_ctns(const std::string &path);

/// Reads only the header; throws on bad magic/version/dims.
CtnsHeader read_ctns_header(const std::string &path);

} // namespace beamscan

#endif // BEAMSCAN_TENSOR_IO_HPP

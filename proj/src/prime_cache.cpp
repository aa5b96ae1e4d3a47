// Copyright 2026 The hlc-verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "hlc/error.hpp"
#include "hlc/sieve.hpp"

namespace hlc {
namespace {

constexpr std::array<char, 4> kMagic = {'H', 'L', 'C', 'P'};

template <typename T>
void put_le(std::ostream& os, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(const unsigned char* buf) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void write_prime_cache(const std::filesystem::path& path, const PrimeTable& table) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write prime cache " + tmp);
    os.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(os, kCacheVersion);
    put_le<std::uint64_t>(os, table.base_index());
    put_le<std::uint64_t>(os, table.size());
    std::vector<std::uint64_t> buf(1 << 16);
    std::vector<unsigned char> bytes;
    for (std::uint64_t done = 0; done < table.size();) {
      const std::uint64_t n = std::min<std::uint64_t>(buf.size(), table.size() - done);
      table.decode(table.base_index() + done, std::span<std::uint64_t>(buf.data(), n));
      bytes.resize(n * 8);
      for (std::uint64_t i = 0; i < n; ++i) {
        for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<unsigned char>(buf[i] >> (8 * b));
      }
      os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
      done += n;
    }
    if (!os) throw Error("short write to prime cache " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

PrimeTable read_prime_cache(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open prime cache " + path.string());
  unsigned char header[24];
  is.read(reinterpret_cast<char*>(header), sizeof(header));
  if (is.gcount() != sizeof(header) || std::memcmp(header, kMagic.data(), 4) != 0) {
    throw Error("not a prime cache file: " + path.string());
  }
  const auto version = get_le<std::uint32_t>(header + 4);
  if (version != kCacheVersion) throw Error("unsupported prime cache version " + std::to_string(version));
  const auto base = get_le<std::uint64_t>(header + 8);
  const auto count = get_le<std::uint64_t>(header + 16);
  PrimeTableBuilder builder(base, count);
  std::vector<unsigned char> bytes(8 << 16);
  std::uint64_t last = 0;
  for (std::uint64_t done = 0; done < count;) {
    const std::uint64_t n = std::min<std::uint64_t>(bytes.size() / 8, count - done);
    is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(n * 8));
    if (static_cast<std::uint64_t>(is.gcount()) != n * 8) throw Error("truncated prime cache " + path.string());
    for (std::uint64_t i = 0; i < n; ++i) {
      last = get_le<std::uint64_t>(bytes.data() + 8 * i);
      builder.push(last);
    }
    done += n;
  }
  return std::move(builder).finish(last);
}

PrimeTable cached_first_primes(const Sieve& sieve, std::uint64_t count) {
  const char* dir = std::getenv("HLC_SIEVE_CACHE");
  if (dir == nullptr || *dir == '\0') return sieve.first_primes(count);
  const std::filesystem::path path = std::filesystem::path(dir) / ("primes-1-" + std::to_string(count) + ".hlcp");
  if (std::filesystem::exists(path)) return read_prime_cache(path);
  PrimeTable table = sieve.first_primes(count);
  std::filesystem::create_directories(dir);
  write_prime_cache(path, table);
  return table;
}

}  // namespace hlc

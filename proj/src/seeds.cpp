// Copyright 2026 The annealab Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "annealab/seeds.hpp"

#include "annealab/common.hpp"

namespace annealab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t hash64(std::uint64_t master, std::initializer_list<SeedField> fields) {
  std::uint64_t h = splitmix64(master);
  for (const auto& f : fields) {
    const std::uint64_t v = std::holds_alternative<std::uint64_t>(f)
                                ? std::get<std::uint64_t>(f)
                                : fnv1a64(std::get<std::string_view>(f));
    h = splitmix64(h ^ v);
  }
  return h;
}

// SpinConfig hex codec lives here with the other serialization helpers.

std::string to_hex(const SpinConfig& config) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out((config.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (config[i] > 0) {
      const int nibble = (out[i / 4] <= '9' ? out[i / 4] - '0' : out[i / 4] - 'a' + 10) | (1 << (i % 4));
      out[i / 4] = kDigits[nibble];
    }
  }
  return out;
}

SpinConfig from_hex(std::string_view hex, std::size_t n) {
  if (hex.size() != (n + 3) / 4) {
    throw ValidationError("config hex has " + std::to_string(hex.size()) + " digits, expected " +
                          std::to_string((n + 3) / 4));
  }
  SpinConfig config = SpinConfig::uniform(n, -1);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    int nibble;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      nibble = c - 'A' + 10;
    } else {
      throw ValidationError(std::string("config hex: bad digit '") + c + "'");
    }
    for (int b = 0; b < 4; ++b) {
      const std::size_t i = d * 4 + b;
      if (!(nibble & (1 << b))) continue;
      if (i >= n) throw ValidationError("config hex: padding bits must be zero");
      config[i] = 1;
    }
  }
  return config;
}

SpinConfig global_flip(const SpinConfig& config) {
  SpinConfig out = config;
  for (auto& s : out.spins) s = static_cast<std::int8_t>(-s);
  return out;
}

}  // namespace annealab

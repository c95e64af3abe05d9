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

#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <initializer_list>

namespace annealab {

// Stable seed derivation. Fields are folded left to right:
//
//   h = splitmix64(master)
//   h = splitmix64(h ^ field_hash(f))   for each field f
//
// where an integer field hashes to itself and a string field to its 64-bit
// FNV-1a hash. Identical (master, fields) give identical seeds on every
// platform and for any worker count.

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

using SeedField = std::variant<std::uint64_t, std::string_view>;
std::uint64_t hash64(std::uint64_t master, std::initializer_list<SeedField> fields);

}  // namespace annealab

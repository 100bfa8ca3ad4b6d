// Copyright 2026 The Heatgear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GEAR_PROTO_CRC16_HPP
#define GEAR_PROTO_CRC16_HPP

#include <cstdint>
#include <string_view>

namespace gear::proto {

/// Reflected polynomial of the CRC16 variant used by P1 telegram trailers
/// (CRC-16/ARC: poly 0x8005 reflected, init 0, no final xor).
inline constexpr std::uint16_t kCrc16Poly = 0xA001;
inline constexpr std::uint16_t kCrc16Init = 0x0000;

std::uint16_t crc16(std::string_view data);

}  // namespace gear::proto

#endif  // GEAR_PROTO_CRC16_HPP

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

#ifndef GEAR_SIM_QR_HPP
#define GEAR_SIM_QR_HPP

#include <cstdint>
#include <random>
#include <string>

namespace gear::sim {

/// The provisioning payload printed on (or displayed by) a device: the name
/// identifies the device type and unit, the proof of possession guards the
/// provisioning channel against man-in-the-middle use.
struct QrPayload {
    std::string name;  // "<type>-<hash of type and hardware address>"
    std::string pop;   // high-entropy secret, unpredictable across devices
};

/// Deterministic name (same type + address always hashes the same), random
/// proof of possession drawn from the caller's rng.
QrPayload make_qr_payload(const std::string& device_type_name, std::uint64_t hardware_address48,
                          std::mt19937_64& rng);

}  // namespace gear::sim

#endif  // GEAR_SIM_QR_HPP

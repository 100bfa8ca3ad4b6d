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

#ifndef GEAR_PROTO_OPENTHERM_HPP
#define GEAR_PROTO_OPENTHERM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace gear::proto {

/// Thermostat-boiler frame message types (bits 30..28 of the 32-bit word).
enum class OtMsgType : std::uint8_t {
    kReadData = 0,
    kWriteData = 1,
    kInvalidData = 2,
    kReserved = 3,
    kReadAck = 4,
    kWriteAck = 5,
    kDataInvalid = 6,
    kUnknownDataId = 7,
};

/// A decoded 32-bit frame. The parity bit is implicit: encode() recomputes
/// it so the full word has even parity.
struct OpenThermFrame {
    OtMsgType msg_type = OtMsgType::kReadData;
    std::uint8_t spare = 0;  // bits 27..24, carried through for round-trips
    std::uint8_t data_id = 0;
    std::uint16_t data_value = 0;

    friend bool operator==(const OpenThermFrame&, const OpenThermFrame&) = default;
};

/// Decode a frame word; nullopt on a parity violation.
std::optional<OpenThermFrame> decode_opentherm_frame(std::uint32_t word);

/// Encode with even parity over all 32 bits.
std::uint32_t encode_opentherm_frame(const OpenThermFrame& frame);

/// f8.8 fixed point: signed 16-bit two's complement value divided by 256.
double decode_f88(std::uint16_t value);
std::uint16_t encode_f88(double value);

struct TimedFrame {
    core::UnixSeconds time = 0;
    std::uint32_t word = 0;
};

/// Turns a reply-frame stream into property measurements. Each property is
/// sampled at no more than its catalog interval: the interval grid is
/// anchored at the property's first frame, and the first frame within each
/// grid slot wins (for equal timestamps, the earlier frame in stream order).
/// Status replies (data-id 0) expand into the three boolean mode
/// properties. Unknown data-ids are counted, never fatal.
class FrameSampler {
   public:
    /// Feed one frame; returns the measurements it produced (0..3).
    std::vector<core::Measurement> feed(const TimedFrame& frame);

    std::uint64_t parity_errors() const { return parity_errors_; }
    std::uint64_t unknown_data_ids() const { return unknown_data_ids_; }
    std::uint64_t ignored_frames() const { return ignored_frames_; }

   private:
    struct SlotState {
        core::UnixSeconds anchor = 0;
        std::int64_t last_slot = -1;
    };
    bool admit(const std::string& property, core::UnixSeconds time);

    std::map<std::string, SlotState> slots_;
    std::uint64_t parity_errors_ = 0;
    std::uint64_t unknown_data_ids_ = 0;
    std::uint64_t ignored_frames_ = 0;
};

}  // namespace gear::proto

#endif  // GEAR_PROTO_OPENTHERM_HPP

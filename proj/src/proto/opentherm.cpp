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
//
// Frame layout and data-ids follow the published OpenTherm v2.2 protocol
// specification; the bit assignments used here are listed in
// docs/format_notes.md.

#include "proto/opentherm.hpp"

#include <bit>
#include <cmath>

#include "core/catalog.hpp"
#include "core/property.hpp"

namespace gear::proto {

namespace {

using core::Measurement;
using core::RawValue;
using core::UnixSeconds;
using core::ValueFormat;

constexpr std::uint32_t kParityBit = 0x80000000u;

core::Seconds interval_of(const std::string& property) {
    const auto* desc =
        core::Catalog::shipped().find("opentherm-monitor")->find_property(property);
    return desc ? desc->default_interval : 30;
}

std::string render_f88_fixed2(std::uint16_t value) {
    return *core::render_value(ValueFormat::kFixed2, RawValue{decode_f88(value)});
}

std::string render_f88_int(std::uint16_t value) {
    return std::to_string(std::llround(decode_f88(value)));
}

}  // namespace

std::optional<OpenThermFrame> decode_opentherm_frame(std::uint32_t word) {
    if (std::popcount(word) % 2 != 0) return std::nullopt;
    OpenThermFrame f;
    f.msg_type = static_cast<OtMsgType>((word >> 28) & 0x7);
    f.spare = static_cast<std::uint8_t>((word >> 24) & 0xF);
    f.data_id = static_cast<std::uint8_t>((word >> 16) & 0xFF);
    f.data_value = static_cast<std::uint16_t>(word & 0xFFFF);
    return f;
}

std::uint32_t encode_opentherm_frame(const OpenThermFrame& frame) {
    std::uint32_t word = (static_cast<std::uint32_t>(frame.msg_type) << 28) |
                         (static_cast<std::uint32_t>(frame.spare & 0xF) << 24) |
                         (static_cast<std::uint32_t>(frame.data_id) << 16) |
                         frame.data_value;
    if (std::popcount(word) % 2 != 0) word |= kParityBit;
    return word;
}

double decode_f88(std::uint16_t value) {
    return static_cast<double>(static_cast<std::int16_t>(value)) / 256.0;
}

std::uint16_t encode_f88(double value) {
    const long raw = std::lround(value * 256.0);
    return static_cast<std::uint16_t>(static_cast<std::int16_t>(raw));
}

bool FrameSampler::admit(const std::string& property, UnixSeconds time) {
    const core::Seconds interval = interval_of(property);
    auto [it, inserted] = slots_.try_emplace(property);
    SlotState& st = it->second;
    if (inserted) st.anchor = time;
    const std::int64_t slot = (time - st.anchor) / interval;
    if (!inserted && slot <= st.last_slot) return false;
    st.last_slot = slot;
    return true;
}

std::vector<Measurement> FrameSampler::feed(const TimedFrame& frame) {
    std::vector<Measurement> out;
    const auto decoded = decode_opentherm_frame(frame.word);
    if (!decoded) {
        ++parity_errors_;
        return out;
    }
    if (decoded->msg_type != OtMsgType::kReadAck && decoded->msg_type != OtMsgType::kWriteAck) {
        ++ignored_frames_;
        return out;
    }

    auto emit = [&](const std::string& property, std::string value) {
        if (!admit(property, frame.time)) return;
        out.push_back(Measurement{property, frame.time, std::move(value)});
    };

    const std::uint16_t v = decoded->data_value;
    switch (decoded->data_id) {
        case 0: {  // status: slave bits in the low byte
            const unsigned slave = v & 0xFF;
            emit("isCentralHeatingModeOn", std::to_string((slave >> 1) & 1));
            emit("isDomesticHotWaterModeOn", std::to_string((slave >> 2) & 1));
            emit("isBoilerFlameOn", std::to_string((slave >> 3) & 1));
            break;
        }
        case 14:  // max relative modulation setting
            emit("maxModulationLevel", render_f88_int(v));
            break;
        case 15:  // high byte: max capacity kW; low byte: min modulation %
            emit("maxBoilerCap", std::to_string((v >> 8) & 0xFF));
            emit("minModulationLevel", std::to_string(v & 0xFF));
            break;
        case 16:
            emit("roomSetpointTemp", render_f88_fixed2(v));
            break;
        case 17:
            emit("relativeModulationLevel", render_f88_int(v));
            break;
        case 24:
            emit("roomTemp", render_f88_fixed2(v));
            break;
        case 25:
            emit("boilerSupplyTemp", render_f88_fixed2(v));
            break;
        case 28:
            emit("boilerReturnTemp", render_f88_fixed2(v));
            break;
        case 57:
            emit("boilerMaxSupplyTemp", render_f88_fixed2(v));
            break;
        default:
            ++unknown_data_ids_;
            break;
    }
    return out;
}

}  // namespace gear::proto

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

#ifndef GEAR_SIM_BUFFER_HPP
#define GEAR_SIM_BUFFER_HPP

#include <deque>
#include <vector>

#include "core/types.hpp"

namespace gear::sim {

/// The persistent measurement buffer: entries accumulate across failed
/// upload windows (and simulated reboots) and drain in order. On overflow
/// the oldest entries drop first, counted, keeping the most recent system
/// state for diagnosis.
class MeasurementBuffer {
   public:
    explicit MeasurementBuffer(std::size_t capacity) : capacity_(capacity) {}

    void push(core::Measurement m) {
        if (entries_.size() == capacity_) {
            entries_.pop_front();
            ++dropped_;
        }
        entries_.push_back(std::move(m));
    }

    std::vector<core::Measurement> drain() {
        std::vector<core::Measurement> out(entries_.begin(), entries_.end());
        entries_.clear();
        return out;
    }

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::uint64_t dropped() const { return dropped_; }

   private:
    std::size_t capacity_;
    std::deque<core::Measurement> entries_;
    std::uint64_t dropped_ = 0;
};

}  // namespace gear::sim

#endif  // GEAR_SIM_BUFFER_HPP

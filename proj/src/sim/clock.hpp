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

#ifndef GEAR_SIM_CLOCK_HPP
#define GEAR_SIM_CLOCK_HPP

#include <cmath>

#include "core/types.hpp"

namespace gear::sim {

/// A device clock against simulation ground truth: an offset that grows
/// with the crystal's drift and snaps back (to within the sync tolerance,
/// here exactly zero) on every successful time sync.
class DeviceClock {
   public:
    DeviceClock(double drift_ppm, core::UnixSeconds synced_at)
        : drift_ppm_(drift_ppm), last_sync_(synced_at) {}

    core::UnixSeconds device_time(core::UnixSeconds true_time) const {
        const double elapsed = static_cast<double>(true_time - last_sync_);
        return true_time +
               static_cast<core::UnixSeconds>(std::llround(offset_ + drift_ppm_ * 1e-6 * elapsed));
    }

    double offset_seconds(core::UnixSeconds true_time) const {
        return offset_ + drift_ppm_ * 1e-6 * static_cast<double>(true_time - last_sync_);
    }

    void sync(core::UnixSeconds true_now) {
        offset_ = 0.0;
        last_sync_ = true_now;
        ++sync_count_;
    }

    int sync_count() const { return sync_count_; }

   private:
    double drift_ppm_;
    double offset_ = 0.0;
    core::UnixSeconds last_sync_;
    int sync_count_ = 0;
};

}  // namespace gear::sim

#endif  // GEAR_SIM_CLOCK_HPP

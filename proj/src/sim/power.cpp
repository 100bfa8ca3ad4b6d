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

#include "sim/power.hpp"

#include <limits>

namespace gear::sim {

PowerProfile core_ink_profile() {
    // off mode keeps only the RTC alive: 2.3 uA at 3.3 V
    return PowerProfile{0.15, 2.0e-3, 2.3e-6 * 3.3};
}

double idle_threshold_seconds(const PowerProfile& profile) {
    const double saving = profile.sleep_power_w - profile.off_power_w;
    if (saving <= 0.0) return std::numeric_limits<double>::infinity();
    return profile.boot_energy_j / saving;
}

IdleMode choose_power_strategy(double gap_seconds, const PowerProfile& profile) {
    return gap_seconds > idle_threshold_seconds(profile) ? IdleMode::kOff : IdleMode::kSleep;
}

double idle_energy_joules(double gap_seconds, IdleMode mode, const PowerProfile& profile) {
    if (mode == IdleMode::kSleep) return gap_seconds * profile.sleep_power_w;
    return profile.boot_energy_j + gap_seconds * profile.off_power_w;
}

}  // namespace gear::sim

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

#ifndef GEAR_SIM_POWER_HPP
#define GEAR_SIM_POWER_HPP

namespace gear::sim {

/// Energy figures a firmware build supplies so the scheduler can pick the
/// cheaper idle mode for a gap between events.
struct PowerProfile {
    double boot_energy_j = 0.0;   // extra energy of powering off and booting back
    double sleep_power_w = 0.0;   // light-sleep draw
    double off_power_w = 0.0;     // off-mode residual draw (RTC only)
};

/// Profile resembling the e-ink controller hardware: 2.3 uA off-state
/// current at 3.3 V, a couple of mJ-scale boot cost.
PowerProfile core_ink_profile();

enum class IdleMode { kSleep, kOff };

/// Break-even gap between sleeping and powering off:
/// boot_energy / (sleep_power - off_power). Infinite when sleeping is never
/// more expensive.
double idle_threshold_seconds(const PowerProfile& profile);

/// Off exactly when the gap exceeds the threshold; ties sleep.
IdleMode choose_power_strategy(double gap_seconds, const PowerProfile& profile);

/// Energy spent idling through a gap in the given mode.
double idle_energy_joules(double gap_seconds, IdleMode mode, const PowerProfile& profile);

}  // namespace gear::sim

#endif  // GEAR_SIM_POWER_HPP

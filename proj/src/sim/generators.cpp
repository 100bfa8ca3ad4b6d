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

#include "sim/generators.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "core/property.hpp"
#include "proto/crc16.hpp"
#include "proto/dsmr_time.hpp"
#include "proto/opentherm.hpp"
#include "proto/p1_telegram.hpp"
#include "proto/smart_meter.hpp"

namespace gear::sim {

namespace {

using core::Measurement;
using core::RawValue;
using core::Seconds;
using core::UnixSeconds;
using core::ValueFormat;

constexpr double kTau = 6.28318530717958647692;

int local_hour(UnixSeconds t, const std::string& tz) {
    const auto local = proto::unix_to_dsmr_timestamp(t, tz, false);
    return local ? local->hour : 0;
}

std::string fixed1(double v) { return *core::render_value(ValueFormat::kFixed1, RawValue{v}); }

double diurnal(UnixSeconds t, const std::string& tz, double phase_hours) {
    const auto local = proto::unix_to_dsmr_timestamp(t, tz, false);
    const double h = local ? local->hour + local->minute / 60.0 : 0.0;
    return std::sin(kTau * (h - phase_hours) / 24.0);
}

OccupancyCounts scan_household(const OccupancyRegistry& registry, UnixSeconds t,
                               const std::string& tz, std::mt19937_64& rng) {
    // residents drift out around midday and are mostly home otherwise
    const int hour = local_hour(t, tz);
    double present_prob = 0.85;
    if (hour >= 8 && hour < 17) present_prob = 0.3;
    if (hour >= 0 && hour < 7) present_prob = 0.97;
    std::set<std::uint64_t> present;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const auto id : registry.registered_ids) {
        if (coin(rng) < present_prob) present.insert(id);
    }
    // a guest's unregistered phone may be around; scanning must ignore it
    present.insert(0xFFFFFFFFFFFF);
    return occupancy_scan(registry, present);
}

// ---------------- living room ----------------

class LivingRoomGenerator : public SensorGenerator {
   public:
    explicit LivingRoomGenerator(const GeneratorConfig& config)
        : tz_(config.timezone), rng_(config.seed) {
        for (int r = 0; r < config.residents; ++r)
            registry_.registered_ids.insert(0x5CCF7F000000ull + config.seed * 16 + r);
    }

    Seconds tick_interval() const override { return 600; }

    std::vector<Measurement> tick(UnixSeconds stamp, UnixSeconds true_time) override {
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        const auto counts = scan_household(registry_, true_time, tz_, rng_);

        const double temp =
            19.0 + 2.0 * diurnal(true_time, tz_, 9.0) + 0.2 * jitter(rng_);
        const double humidity = 0.5 + 0.06 * diurnal(true_time, tz_, 3.0) + 0.01 * jitter(rng_);
        const long co2 = std::lround(430.0 + 70.0 * diurnal(true_time, tz_, 2.0) +
                                     180.0 * counts.occupancy + 8.0 * jitter(rng_));

        return {
            {"heartbeat__0", stamp, std::to_string(++heartbeat_)},
            {"co2__ppm", stamp, std::to_string(co2 < 0 ? 0 : co2)},
            {"temp_indoor__degC", stamp, fixed1(temp)},
            {"rel_humidity__0", stamp, fixed1(humidity)},
            {"onboarded__p", stamp, std::to_string(counts.onboarded)},
            {"occupancy__p", stamp, std::to_string(counts.occupancy)},
        };
    }

   private:
    std::string tz_;
    std::mt19937_64 rng_;
    OccupancyRegistry registry_;
    std::uint64_t heartbeat_ = 0;
};

// ---------------- smart meter ----------------

// Maintains meter registers and renders full telegrams, which then pass
// through the real parser, CRC check and extraction, so the protocol stack
// is exercised end to end.
class SmartMeterGenerator : public SensorGenerator {
   public:
    explicit SmartMeterGenerator(const GeneratorConfig& config)
        : tz_(config.timezone), version_(config.dsmr_version), rng_(config.seed) {
        gas_register_time_ = 0;
    }

    Seconds tick_interval() const override { return 600; }

    std::vector<Measurement> tick(UnixSeconds stamp, UnixSeconds true_time) override {
        advance_registers(true_time);
        const std::string telegram_text = render_telegram(true_time);

        const auto parsed = proto::parse_p1_telegram(telegram_text);
        if (!parsed.ok())
            throw std::logic_error("generated telegram failed to parse: " + parsed.error.message);
        if (version_ >= 4.0 &&
            proto::verify_telegram_crc(telegram_text).kind != proto::CrcVerdict::kOk)
            throw std::logic_error("generated telegram failed its CRC check");

        proto::ReadingContext ctx;
        ctx.timezone = tz_;
        ctx.prev_telegram_time = prev_telegram_time_;
        ctx.receive_time = stamp;
        const auto reading = proto::telegram_to_reading(*parsed.telegram, ctx);
        if (!reading.ok()) throw std::logic_error("telegram extraction failed: " + reading.error);
        prev_telegram_time_ = reading.reading->telegram_time;

        auto measurements = reading.reading->measurements;
        measurements.push_back({"heartbeat__0", stamp, std::to_string(++heartbeat_)});
        return measurements;
    }

   private:
    void advance_registers(UnixSeconds t) {
        std::uniform_real_distribution<double> use(0.01, 0.09);
        const int hour = local_hour(t, tz_);
        const bool high_tariff = hour >= 7 && hour < 23;
        (high_tariff ? e_use_hi_ : e_use_lo_) += use(rng_);
        gas_total_ += (hour >= 6 && hour < 22 ? 0.012 : 0.004) + 0.004 * use(rng_);

        const Seconds period = version_ >= 5.0 ? 300 : 3600;
        const UnixSeconds boundary = (t / period) * period;
        if (boundary > gas_register_time_) {
            gas_register_time_ = boundary;
            gas_register_value_ = gas_total_;
        }
    }

    std::string render_telegram(UnixSeconds t) const {
        char line[96];
        std::string body;
        const bool modern = version_ >= 4.0;
        body += modern ? "/ISK5\\2M550T-1012\r\n\r\n" : "/ISk5\\2MT382-1000\r\n\r\n";
        if (modern) {
            std::snprintf(line, sizeof line, "1-3:0.2.8(%02d)\r\n",
                          static_cast<int>(std::lround(version_ * 10)));
            body += line;
            const auto tst = proto::unix_to_dsmr_timestamp(t, tz_, true);
            body += "0-0:1.0.0(" + proto::render_dsmr_timestamp(*tst) + ")\r\n";
        }
        body += "0-0:96.1.1(4530303435303033383833343439323137)\r\n";
        const struct {
            const char* ref;
            double value;
        } registers[] = {
            {"1-0:1.8.1", e_use_lo_},
            {"1-0:1.8.2", e_use_hi_},
            {"1-0:2.8.1", e_ret_lo_},
            {"1-0:2.8.2", e_ret_hi_},
        };
        for (const auto& r : registers) {
            std::snprintf(line, sizeof line, "%s(%010.3f*kWh)\r\n", r.ref, r.value);
            body += line;
        }
        if (gas_register_time_ > 0) {
            const auto gas_tst =
                proto::unix_to_dsmr_timestamp(gas_register_time_, tz_, modern);
            if (modern) {
                std::snprintf(line, sizeof line, "0-1:24.2.1(%s)(%09.3f*m3)\r\n",
                              proto::render_dsmr_timestamp(*gas_tst).c_str(),
                              gas_register_value_);
                body += line;
            } else {
                std::snprintf(line, sizeof line,
                              "0-1:24.3.0(%s)(00)(60)(1)(0-1:24.2.1)(m3)\r\n(%09.3f)\r\n",
                              proto::render_dsmr_timestamp(*gas_tst).c_str(),
                              gas_register_value_);
                body += line;
            }
        }
        body += "!";
        if (modern) {
            std::snprintf(line, sizeof line, "%04X", proto::crc16(body));
            body += line;
        }
        body += "\r\n";
        return body;
    }

    std::string tz_;
    double version_;
    std::mt19937_64 rng_;
    double e_use_hi_ = 3248.234;
    double e_use_lo_ = 4167.058;
    double e_ret_hi_ = 0.0;
    double e_ret_lo_ = 0.0;
    double gas_total_ = 15223.004;
    double gas_register_value_ = 15223.004;
    UnixSeconds gas_register_time_ = 0;
    std::optional<UnixSeconds> prev_telegram_time_;
    std::uint64_t heartbeat_ = 0;
};

// ---------------- thermostat/boiler monitor ----------------

// Emits a reply-frame burst through the frame sampler every five seconds,
// denser than every per-property interval, so the sampling rule governs
// the measurement cadence exactly.
class OpenThermGenerator : public SensorGenerator {
   public:
    explicit OpenThermGenerator(const GeneratorConfig& config)
        : tz_(config.timezone), rng_(config.seed) {}

    Seconds tick_interval() const override { return 5; }

    std::vector<Measurement> tick(UnixSeconds stamp, UnixSeconds true_time) override {
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        const int hour = local_hour(true_time, tz_);
        const bool comfort = hour >= 7 && hour < 22;
        const double setpoint = comfort ? 20.0 : 17.0;
        const double room = setpoint - 0.4 + 0.3 * diurnal(true_time, tz_, 6.0) +
                            0.05 * jitter(rng_);
        // the burner cycles roughly every half hour while heating
        const bool ch_on = comfort && ((true_time / 1800) % 2 == 0);
        const bool dhw_on = !ch_on && (true_time % 7200) < 180;
        const bool flame = ch_on || dhw_on;
        const double modulation = ch_on ? 35.0 + 25.0 * diurnal(true_time, tz_, 18.0) : 0.0;
        const double supply =
            flame ? 55.0 + 8.0 * diurnal(true_time, tz_, 17.0) + 0.2 * jitter(rng_)
                  : 28.0 + 0.2 * jitter(rng_);
        const double ret = supply - (flame ? 9.0 : 1.5) + 0.2 * jitter(rng_);

        std::uint16_t status = 0;
        if (flame) status |= 1u << 3;
        if (ch_on) status |= 1u << 1;
        if (dhw_on) status |= 1u << 2;

        const struct {
            std::uint8_t id;
            std::uint16_t value;
        } replies[] = {
            {0, status},
            {14, proto::encode_f88(100.0)},
            {15, static_cast<std::uint16_t>((24 << 8) | 20)},
            {16, proto::encode_f88(setpoint)},
            {17, proto::encode_f88(modulation)},
            {24, proto::encode_f88(room)},
            {25, proto::encode_f88(supply)},
            {28, proto::encode_f88(ret)},
            {57, proto::encode_f88(75.0)},
        };
        std::vector<Measurement> out;
        for (const auto& reply : replies) {
            const auto word = proto::encode_opentherm_frame(
                {proto::OtMsgType::kReadAck, 0, reply.id, reply.value});
            for (auto& m : sampler_.feed({stamp, word})) out.push_back(std::move(m));
        }
        return out;
    }

   private:
    std::string tz_;
    std::mt19937_64 rng_;
    proto::FrameSampler sampler_;
};

// ---------------- pipe-clamp satellite ----------------

class PipeClampGenerator : public SensorGenerator {
   public:
    explicit PipeClampGenerator(const GeneratorConfig& config)
        : tz_(config.timezone), rng_(config.seed) {}

    Seconds tick_interval() const override { return 10; }

    std::vector<Measurement> tick(UnixSeconds stamp, UnixSeconds true_time) override {
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        const bool heating = (true_time / 1800) % 2 == 0;
        const double flow = heating ? 52.0 + 6.0 * diurnal(true_time, tz_, 17.0) : 26.0;
        return {
            {"boilerTemp1", stamp, fixed1(flow + 0.3 * jitter(rng_))},
            {"boilerTemp2", stamp, fixed1(flow - 8.5 + 0.3 * jitter(rng_))},
        };
    }

   private:
    std::string tz_;
    std::mt19937_64 rng_;
};

// ---------------- room satellite (older generation) ----------------

class RoomSatelliteGenerator : public SensorGenerator {
   public:
    explicit RoomSatelliteGenerator(const GeneratorConfig& config)
        : tz_(config.timezone), rng_(config.seed) {}

    Seconds tick_interval() const override { return 300; }

    std::vector<Measurement> tick(UnixSeconds stamp, UnixSeconds true_time) override {
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        const double temp = 19.5 + 1.8 * diurnal(true_time, tz_, 9.0) + 0.1 * jitter(rng_);
        const long co2 = std::lround(520.0 + 90.0 * diurnal(true_time, tz_, 2.0) +
                                     10.0 * jitter(rng_));
        return {
            {"CO2concentration", stamp, std::to_string(co2 < 0 ? 0 : co2)},
            {"roomTempCO2", stamp, fixed1(temp + 0.2)},
            {"humidity", stamp, fixed1(48.0 + 5.0 * diurnal(true_time, tz_, 3.0))},
            {"roomTemp", stamp, fixed1(temp)},
        };
    }

   private:
    std::string tz_;
    std::mt19937_64 rng_;
};

// ---------------- integrated boiler monitor ----------------

// The combined unit: the thermostat-line decoder plus two pipe clamps on
// one device, uploading over its own link.
class IntegratedBoilerGenerator : public SensorGenerator {
   public:
    explicit IntegratedBoilerGenerator(const GeneratorConfig& config)
        : opentherm_(config), clamps_(config) {}

    Seconds tick_interval() const override { return 5; }

    std::vector<Measurement> tick(UnixSeconds stamp, UnixSeconds true_time) override {
        auto out = opentherm_.tick(stamp, true_time);
        if (true_time % 10 == 0) {
            for (auto& m : clamps_.tick(stamp, true_time)) out.push_back(std::move(m));
        }
        return out;
    }

   private:
    OpenThermGenerator opentherm_;
    PipeClampGenerator clamps_;
};

}  // namespace

OccupancyCounts occupancy_scan(const OccupancyRegistry& registry,
                               const std::set<std::uint64_t>& present_ids) {
    OccupancyCounts counts;
    counts.onboarded = static_cast<int>(registry.registered_ids.size());
    for (const auto id : registry.registered_ids) {
        if (present_ids.count(id)) ++counts.occupancy;
    }
    return counts;
}

std::unique_ptr<SensorGenerator> make_generator(const GeneratorConfig& config) {
    if (config.device_type == "living-room-module")
        return std::make_unique<LivingRoomGenerator>(config);
    if (config.device_type == "smart-meter-module")
        return std::make_unique<SmartMeterGenerator>(config);
    if (config.device_type == "opentherm-monitor")
        return std::make_unique<OpenThermGenerator>(config);
    if (config.device_type == "boiler-monitor-satellite")
        return std::make_unique<PipeClampGenerator>(config);
    if (config.device_type == "room-monitor-satellite")
        return std::make_unique<RoomSatelliteGenerator>(config);
    if (config.device_type == "integrated-boiler-monitor")
        return std::make_unique<IntegratedBoilerGenerator>(config);
    throw std::invalid_argument("no generator for device type '" + config.device_type + "'");
}

}  // namespace gear::sim

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

#ifndef GEAR_CORE_CATALOG_HPP
#define GEAR_CORE_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/property.hpp"
#include "core/types.hpp"

namespace gear::core {

/// A campaign-declared origin of measurements: a measurement device type, a
/// one-time energy query, or an authorized cloud feed.
struct DataSourceType {
    SourceVariant variant = SourceVariant::kDeviceType;
    std::string type_name;
    std::vector<PropertyDescriptor> properties;  // may be empty for a cloud feed
    Seconds upload_interval = 0;                 // device types only

    const PropertyDescriptor* find_property(const std::string& name) const;
};

/// The shipped data-source catalog. Per-source property rows carry the
/// exact (name, unit, format, interval) vocabulary of the deployed device
/// generations; the same property name may carry a different format under a
/// different source (e.g. roomTemp).
class Catalog {
   public:
    static const Catalog& shipped();

    const DataSourceType* find(const std::string& type_name) const;
    const std::vector<DataSourceType>& sources() const { return sources_; }

    /// Distinct (name, unit, format, interval) rows across all sources.
    std::vector<PropertyDescriptor> distinct_property_rows() const;

    /// Descriptor for a property under any source (first match); used where
    /// only the unit/format is needed and sources agree.
    const PropertyDescriptor* find_property(const std::string& name) const;

   private:
    std::vector<DataSourceType> sources_;
};

/// Default bulk-upload interval for measurement devices.
inline constexpr Seconds kDefaultUploadInterval = 6 * 3600;

}  // namespace gear::core

#endif  // GEAR_CORE_CATALOG_HPP

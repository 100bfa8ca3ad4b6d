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

#include "sim/qr.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace gear::sim {

namespace {

std::string sha256_hex_prefix(const std::string& input, std::size_t hex_chars) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(input.data(), input.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hexd = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len && out.size() < hex_chars; ++i) {
        out.push_back(hexd[digest[i] >> 4]);
        if (out.size() < hex_chars) out.push_back(hexd[digest[i] & 0xF]);
    }
    return out;
}

}  // namespace

QrPayload make_qr_payload(const std::string& device_type_name, std::uint64_t hardware_address48,
                          std::mt19937_64& rng) {
    char mac[18];
    std::snprintf(mac, sizeof mac, "%012llx",
                  static_cast<unsigned long long>(hardware_address48 & 0xFFFFFFFFFFFFull));
    QrPayload payload;
    payload.name = device_type_name + "-" + sha256_hex_prefix(device_type_name + ":" + mac, 10);
    static const char* hexd = "0123456789abcdef";
    for (int i = 0; i < 32; ++i) payload.pop.push_back(hexd[rng() & 0xF]);
    return payload;
}

}  // namespace gear::sim

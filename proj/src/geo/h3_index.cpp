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
// Port of the H3 cell indexing routines (latLngToCell / cellToLatLng and
// the supporting face-IJK arithmetic) from the reference implementation,
// https://github.com/uber/h3 (Apache-2.0). Only the forward/inverse index
// path is ported; grid traversal, polygons and edges are not.

#include "geo/h3_index.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace gear::geo {
namespace {

constexpr int kNumIcosaFaces = 20;
constexpr int kNumBaseCells = 122;
constexpr double kEpsilon = 1e-16;

// gnomonic scale of a resolution-0 unit hexagon, and sqrt(7) the
// per-resolution aperture scale
constexpr double kRes0UGnomonic = 0.381966011250105;
constexpr double kSqrt7 = 2.6457513110645907;
constexpr double kSin60 = 0.8660254037844386;
// rotation between Class II and Class III grids: asin(sqrt(3/28))
constexpr double kAp7RotRads = 0.3334731722518321;

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;
constexpr double kTwoPi = 6.28318530717958647692;

struct Vec2d {
    double x, y;
};
struct Vec3d {
    double x, y, z;
};
struct GeoRad {
    double lat, lng;  // radians
};
struct CoordIJK {
    int i, j, k;
};
struct FaceIJK {
    int face;
    CoordIJK coord;
};
struct BaseCellData {
    FaceIJK home;
    int is_pentagon;
    int cw_offset_pent[2];
};
struct BaseCellOrient {
    int base_cell;
    int ccw_rot60;
};
struct FaceOrientIjk {
    int face;
    CoordIJK translate;
    int ccw_rot60;
};

#include "h3_tables.inc"

// face centers in lat/lng, derived once from the 3D unit vectors
const std::array<GeoRad, kNumIcosaFaces>& face_center_geo() {
    static const std::array<GeoRad, kNumIcosaFaces> centers = [] {
        std::array<GeoRad, kNumIcosaFaces> out{};
        for (int f = 0; f < kNumIcosaFaces; ++f) {
            const Vec3d& v = kFaceCenterPoint[f];
            out[f] = {std::asin(v.z), std::atan2(v.y, v.x)};
        }
        return out;
    }();
    return centers;
}

// ---- index bit layout ------------------------------------------------

constexpr std::uint64_t kModeCell = 1;
constexpr int kModeOffset = 59;
constexpr int kReservedOffset = 56;
constexpr int kResOffset = 52;
constexpr int kBaseCellOffset = 45;
constexpr std::uint64_t kHighBitMask = std::uint64_t{1} << 63;
// all 15 digits set to 7
constexpr std::uint64_t kInitDigits = (std::uint64_t{1} << 45) - 1;

enum Digit : int {
    kCenter = 0,
    kAxisK = 1,
    kAxisJ = 2,
    kAxisJK = 3,
    kAxisI = 4,
    kAxisIK = 5,
    kAxisIJ = 6,
    kInvalidDigit = 7,
};

int get_mode(CellIndex h) { return static_cast<int>((h >> kModeOffset) & 0xF); }
int get_reserved(CellIndex h) { return static_cast<int>((h >> kReservedOffset) & 0x7); }
int get_resolution(CellIndex h) { return static_cast<int>((h >> kResOffset) & 0xF); }
int get_base_cell(CellIndex h) { return static_cast<int>((h >> kBaseCellOffset) & 0x7F); }

void set_resolution(CellIndex& h, int res) {
    h = (h & ~(std::uint64_t{0xF} << kResOffset)) | (std::uint64_t(res) << kResOffset);
}
void set_base_cell(CellIndex& h, int bc) {
    h = (h & ~(std::uint64_t{0x7F} << kBaseCellOffset)) | (std::uint64_t(bc) << kBaseCellOffset);
}
int get_digit(CellIndex h, int r) {
    return static_cast<int>((h >> ((kMaxCellResolution - r) * 3)) & 0x7);
}
void set_digit(CellIndex& h, int r, int digit) {
    const int shift = (kMaxCellResolution - r) * 3;
    h = (h & ~(std::uint64_t{0x7} << shift)) | (std::uint64_t(digit) << shift);
}

bool base_cell_is_pentagon(int bc) { return kBaseCellData[bc].is_pentagon != 0; }

bool base_cell_is_cw_offset(int bc, int face) {
    return kBaseCellData[bc].cw_offset_pent[0] == face ||
           kBaseCellData[bc].cw_offset_pent[1] == face;
}

int leading_nonzero_digit(CellIndex h) {
    const int res = get_resolution(h);
    for (int r = 1; r <= res; ++r) {
        if (get_digit(h, r) != kCenter) return get_digit(h, r);
    }
    return kCenter;
}

int rotate_digit_60ccw(int digit) {
    switch (digit) {
        case kAxisK: return kAxisIK;
        case kAxisIK: return kAxisI;
        case kAxisI: return kAxisIJ;
        case kAxisIJ: return kAxisJ;
        case kAxisJ: return kAxisJK;
        case kAxisJK: return kAxisK;
        default: return digit;
    }
}

int rotate_digit_60cw(int digit) {
    switch (digit) {
        case kAxisK: return kAxisJK;
        case kAxisJK: return kAxisJ;
        case kAxisJ: return kAxisIJ;
        case kAxisIJ: return kAxisI;
        case kAxisI: return kAxisIK;
        case kAxisIK: return kAxisK;
        default: return digit;
    }
}

CellIndex rotate60ccw(CellIndex h) {
    for (int r = 1, res = get_resolution(h); r <= res; ++r)
        set_digit(h, r, rotate_digit_60ccw(get_digit(h, r)));
    return h;
}

CellIndex rotate60cw(CellIndex h) {
    for (int r = 1, res = get_resolution(h); r <= res; ++r)
        set_digit(h, r, rotate_digit_60cw(get_digit(h, r)));
    return h;
}

// pentagon rotation: rotate and skip the deleted k-axis subsequence
CellIndex rotate_pent60ccw(CellIndex h) {
    bool found_first = false;
    for (int r = 1, res = get_resolution(h); r <= res; ++r) {
        set_digit(h, r, rotate_digit_60ccw(get_digit(h, r)));
        if (!found_first && get_digit(h, r) != kCenter) {
            found_first = true;
            if (leading_nonzero_digit(h) == kAxisK) h = rotate60ccw(h);
        }
    }
    return h;
}

// ---- ijk arithmetic ---------------------------------------------------

constexpr CoordIJK kUnitVecs[7] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1},
                                   {1, 0, 0}, {1, 0, 1}, {1, 1, 0}};

void ijk_normalize(CoordIJK& c) {
    if (c.i < 0) {
        c.j -= c.i;
        c.k -= c.i;
        c.i = 0;
    }
    if (c.j < 0) {
        c.i -= c.j;
        c.k -= c.j;
        c.j = 0;
    }
    if (c.k < 0) {
        c.i -= c.k;
        c.j -= c.k;
        c.k = 0;
    }
    int min = c.i;
    if (c.j < min) min = c.j;
    if (c.k < min) min = c.k;
    if (min > 0) {
        c.i -= min;
        c.j -= min;
        c.k -= min;
    }
}

CoordIJK ijk_sub(const CoordIJK& a, const CoordIJK& b) {
    return {a.i - b.i, a.j - b.j, a.k - b.k};
}

void ijk_scale(CoordIJK& c, int factor) {
    c.i *= factor;
    c.j *= factor;
    c.k *= factor;
}

void ijk_add_to(CoordIJK& c, const CoordIJK& d) {
    c.i += d.i;
    c.j += d.j;
    c.k += d.k;
}

int unit_ijk_to_digit(const CoordIJK& c) {
    CoordIJK n = c;
    ijk_normalize(n);
    for (int d = kCenter; d < kInvalidDigit; ++d) {
        if (n.i == kUnitVecs[d].i && n.j == kUnitVecs[d].j && n.k == kUnitVecs[d].k) return d;
    }
    return kInvalidDigit;
}

void ijk_rotate60ccw(CoordIJK& c) {
    CoordIJK iv = {1, 1, 0}, jv = {0, 1, 1}, kv = {1, 0, 1};
    ijk_scale(iv, c.i);
    ijk_scale(jv, c.j);
    ijk_scale(kv, c.k);
    c = iv;
    ijk_add_to(c, jv);
    ijk_add_to(c, kv);
    ijk_normalize(c);
}

void ijk_rotate60cw(CoordIJK& c) {
    CoordIJK iv = {1, 0, 1}, jv = {1, 1, 0}, kv = {0, 1, 1};
    ijk_scale(iv, c.i);
    ijk_scale(jv, c.j);
    ijk_scale(kv, c.k);
    c = iv;
    ijk_add_to(c, jv);
    ijk_add_to(c, kv);
    ijk_normalize(c);
}

// aperture-7 resolution steps (ccw and cw grid orientations)
void up_ap7(CoordIJK& c) {
    const int i = c.i - c.k;
    const int j = c.j - c.k;
    c.i = static_cast<int>(std::lround((3 * i - j) / 7.0));
    c.j = static_cast<int>(std::lround((i + 2 * j) / 7.0));
    c.k = 0;
    ijk_normalize(c);
}

void up_ap7r(CoordIJK& c) {
    const int i = c.i - c.k;
    const int j = c.j - c.k;
    c.i = static_cast<int>(std::lround((2 * i + j) / 7.0));
    c.j = static_cast<int>(std::lround((3 * j - i) / 7.0));
    c.k = 0;
    ijk_normalize(c);
}

void down_ap7(CoordIJK& c) {
    CoordIJK iv = {3, 0, 1}, jv = {1, 3, 0}, kv = {0, 1, 3};
    ijk_scale(iv, c.i);
    ijk_scale(jv, c.j);
    ijk_scale(kv, c.k);
    c = iv;
    ijk_add_to(c, jv);
    ijk_add_to(c, kv);
    ijk_normalize(c);
}

void down_ap7r(CoordIJK& c) {
    CoordIJK iv = {3, 1, 0}, jv = {0, 3, 1}, kv = {1, 0, 3};
    ijk_scale(iv, c.i);
    ijk_scale(jv, c.j);
    ijk_scale(kv, c.k);
    c = iv;
    ijk_add_to(c, jv);
    ijk_add_to(c, kv);
    ijk_normalize(c);
}

void ijk_to_neighbor(CoordIJK& c, int digit) {
    if (digit > kCenter && digit < kInvalidDigit) {
        ijk_add_to(c, kUnitVecs[digit]);
        ijk_normalize(c);
    }
}

bool is_class_iii(int res) { return (res % 2) == 1; }

// ---- geodesy helpers ---------------------------------------------------

double pos_angle(double rads) {
    double tmp = (rads < 0.0) ? rads + kTwoPi : rads;
    if (rads >= kTwoPi) tmp -= kTwoPi;
    return tmp;
}

double constrain_lng(double lng) {
    while (lng > kPi) lng -= kTwoPi;
    while (lng < -kPi) lng += kTwoPi;
    return lng;
}

Vec3d geo_to_vec3d(const GeoRad& g) {
    const double r = std::cos(g.lat);
    return {std::cos(g.lng) * r, std::sin(g.lng) * r, std::sin(g.lat)};
}

double square_dist(const Vec3d& a, const Vec3d& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

double geo_azimuth(const GeoRad& p1, const GeoRad& p2) {
    return std::atan2(std::cos(p2.lat) * std::sin(p2.lng - p1.lng),
                      std::cos(p1.lat) * std::sin(p2.lat) -
                          std::sin(p1.lat) * std::cos(p2.lat) * std::cos(p2.lng - p1.lng));
}

// great-circle destination point from p1 along azimuth az at central angle
// `distance`
GeoRad geo_az_distance(const GeoRad& p1, double az, double distance) {
    if (distance < kEpsilon) return p1;
    GeoRad p2{};
    az = pos_angle(az);
    if (az < kEpsilon || std::fabs(az - kPi) < kEpsilon) {
        p2.lat = (az < kEpsilon) ? p1.lat + distance : p1.lat - distance;
        if (std::fabs(p2.lat - kHalfPi) < kEpsilon) {
            p2.lat = kHalfPi;
            p2.lng = 0.0;
        } else if (std::fabs(p2.lat + kHalfPi) < kEpsilon) {
            p2.lat = -kHalfPi;
            p2.lng = 0.0;
        } else {
            p2.lng = constrain_lng(p1.lng);
        }
    } else {
        double sinlat = std::sin(p1.lat) * std::cos(distance) +
                        std::cos(p1.lat) * std::sin(distance) * std::cos(az);
        if (sinlat > 1.0) sinlat = 1.0;
        if (sinlat < -1.0) sinlat = -1.0;
        p2.lat = std::asin(sinlat);
        if (std::fabs(p2.lat - kHalfPi) < kEpsilon) {
            p2.lat = kHalfPi;
            p2.lng = 0.0;
        } else if (std::fabs(p2.lat + kHalfPi) < kEpsilon) {
            p2.lat = -kHalfPi;
            p2.lng = 0.0;
        } else {
            double sinlng = std::sin(az) * std::sin(distance) / std::cos(p2.lat);
            double coslng = (std::cos(distance) - std::sin(p1.lat) * std::sin(p2.lat)) /
                            (std::cos(p1.lat) * std::cos(p2.lat));
            if (sinlng > 1.0) sinlng = 1.0;
            if (sinlng < -1.0) sinlng = -1.0;
            if (coslng > 1.0) coslng = 1.0;
            if (coslng < -1.0) coslng = -1.0;
            p2.lng = constrain_lng(p1.lng + std::atan2(sinlng, coslng));
        }
    }
    return p2;
}

// ---- face IJK <-> geo ----------------------------------------------------

// gnomonic projection onto the nearest icosahedron face, in face-centered
// hex grid coordinates at the given resolution
void geo_to_hex2d(const GeoRad& g, int res, int& face, Vec2d& v) {
    const Vec3d v3d = geo_to_vec3d(g);
    face = 0;
    double sqd = square_dist(kFaceCenterPoint[0], v3d);
    for (int f = 1; f < kNumIcosaFaces; ++f) {
        const double sqd_f = square_dist(kFaceCenterPoint[f], v3d);
        if (sqd_f < sqd) {
            face = f;
            sqd = sqd_f;
        }
    }
    double r = std::acos(1.0 - sqd / 2.0);
    if (r < kEpsilon) {
        v = {0.0, 0.0};
        return;
    }
    double theta = pos_angle(kFaceAxesAzRadsClassII[face][0] -
                             pos_angle(geo_azimuth(face_center_geo()[face], g)));
    if (is_class_iii(res)) theta = pos_angle(theta - kAp7RotRads);
    r = std::tan(r) / kRes0UGnomonic;
    for (int i = 0; i < res; ++i) r *= kSqrt7;
    v = {r * std::cos(theta), r * std::sin(theta)};
}

void hex2d_to_coord_ijk(const Vec2d& v, CoordIJK& h) {
    h.k = 0;
    const double a1 = std::fabs(v.x);
    const double a2 = std::fabs(v.y);
    const double x2 = a2 / kSin60;
    const double x1 = a1 + x2 / 2.0;
    const int m1 = static_cast<int>(x1);
    const int m2 = static_cast<int>(x2);
    const double r1 = x1 - m1;
    const double r2 = x2 - m2;

    if (r1 < 0.5) {
        if (r1 < 1.0 / 3.0) {
            h.i = m1;
            h.j = (r2 < (1.0 + r1) / 2.0) ? m2 : m2 + 1;
        } else {
            h.j = (r2 < (1.0 - r1)) ? m2 : m2 + 1;
            h.i = ((1.0 - r1) <= r2 && r2 < (2.0 * r1)) ? m1 + 1 : m1;
        }
    } else {
        if (r1 < 2.0 / 3.0) {
            h.j = (r2 < (1.0 - r1)) ? m2 : m2 + 1;
            h.i = ((2.0 * r1 - 1.0) < r2 && r2 < (1.0 - r1)) ? m1 : m1 + 1;
        } else {
            h.i = m1 + 1;
            h.j = (r2 < (r1 / 2.0)) ? m2 : m2 + 1;
        }
    }

    if (v.x < 0.0) {
        if (h.j % 2 == 0) {
            const long axis_i = h.j / 2;
            const long diff = static_cast<long>(h.i) - axis_i;
            h.i = static_cast<int>(h.i - 2 * diff);
        } else {
            const long axis_i = (h.j + 1) / 2;
            const long diff = static_cast<long>(h.i) - axis_i;
            h.i = static_cast<int>(h.i - (2 * diff + 1));
        }
    }
    if (v.y < 0.0) {
        h.i = h.i - (2 * h.j + 1) / 2;
        h.j = -h.j;
    }
    ijk_normalize(h);
}

void geo_to_face_ijk(const GeoRad& g, int res, FaceIJK& fijk) {
    Vec2d v{};
    geo_to_hex2d(g, res, fijk.face, v);
    hex2d_to_coord_ijk(v, fijk.coord);
}

void ijk_to_hex2d(const CoordIJK& c, Vec2d& v) {
    const int i = c.i - c.k;
    const int j = c.j - c.k;
    v.x = i - 0.5 * j;
    v.y = j * kSin60;
}

void hex2d_to_geo(const Vec2d& v, int face, int res, bool substrate, GeoRad& g) {
    double r = std::sqrt(v.x * v.x + v.y * v.y);
    if (r < kEpsilon) {
        g = face_center_geo()[face];
        return;
    }
    double theta = std::atan2(v.y, v.x);
    for (int i = 0; i < res; ++i) r /= kSqrt7;
    if (substrate) {
        r /= 3.0;
        if (is_class_iii(res)) r /= kSqrt7;
    }
    r *= kRes0UGnomonic;
    r = std::atan(r);
    if (!substrate && is_class_iii(res)) theta = pos_angle(theta + kAp7RotRads);
    theta = pos_angle(kFaceAxesAzRadsClassII[face][0] - theta);
    g = geo_az_distance(face_center_geo()[face], theta, r);
}

void face_ijk_to_geo(const FaceIJK& fijk, int res, GeoRad& g) {
    Vec2d v{};
    ijk_to_hex2d(fijk.coord, v);
    hex2d_to_geo(v, fijk.face, res, false, g);
}

// ---- overage handling (cell center walked off its home face) -------------

int max_dim_by_cii_res(int res) {
    // 2 * 7^(res/2) for Class II resolutions
    int unit = 1;
    for (int i = 0; i < res / 2; ++i) unit *= 7;
    return 2 * unit;
}

int unit_scale_by_cii_res(int res) {
    int unit = 1;
    for (int i = 0; i < res / 2; ++i) unit *= 7;
    return unit;
}

enum Overage { kNoOverage = 0, kFaceEdge = 1, kNewFace = 2 };

constexpr int kQuadIJ = 1, kQuadKI = 2, kQuadJK = 3;

Overage adjust_overage_class_ii(FaceIJK& fijk, int res, bool pent_leading_4, bool substrate) {
    Overage overage = kNoOverage;
    CoordIJK& ijk = fijk.coord;
    int max_dim = max_dim_by_cii_res(res);
    if (substrate) max_dim *= 3;

    if (substrate && ijk.i + ijk.j + ijk.k == max_dim) {
        overage = kFaceEdge;
    } else if (ijk.i + ijk.j + ijk.k > max_dim) {
        overage = kNewFace;
        const FaceOrientIjk* orient;
        if (ijk.k > 0) {
            if (ijk.j > 0) {
                orient = &kFaceNeighbors[fijk.face][kQuadJK];
            } else {
                orient = &kFaceNeighbors[fijk.face][kQuadKI];
                if (pent_leading_4) {
                    // translate to pentagon center, rotate out of the deleted
                    // k subsequence, translate back
                    CoordIJK origin = {max_dim, 0, 0};
                    CoordIJK tmp = ijk_sub(ijk, origin);
                    ijk_rotate60cw(tmp);
                    ijk_add_to(tmp, origin);
                    ijk = tmp;
                }
            }
        } else {
            orient = &kFaceNeighbors[fijk.face][kQuadIJ];
        }
        fijk.face = orient->face;
        for (int i = 0; i < orient->ccw_rot60; ++i) ijk_rotate60ccw(ijk);
        CoordIJK trans = orient->translate;
        int unit_scale = unit_scale_by_cii_res(res);
        if (substrate) unit_scale *= 3;
        ijk_scale(trans, unit_scale);
        ijk_add_to(ijk, trans);
        ijk_normalize(ijk);
        if (substrate && ijk.i + ijk.j + ijk.k == max_dim) overage = kFaceEdge;
    }
    return overage;
}

// ---- face IJK <-> cell index ----------------------------------------------

int face_ijk_to_base_cell(const FaceIJK& f) {
    return kFaceIjkBaseCells[f.face][f.coord.i][f.coord.j][f.coord.k].base_cell;
}

int face_ijk_to_base_cell_ccw_rot60(const FaceIJK& f) {
    return kFaceIjkBaseCells[f.face][f.coord.i][f.coord.j][f.coord.k].ccw_rot60;
}

constexpr int kMaxFaceCoord = 2;

CellIndex face_ijk_to_h3(const FaceIJK& fijk_in, int res) {
    CellIndex h = kInitDigits;
    h |= kModeCell << kModeOffset;
    set_resolution(h, res);

    if (res == 0) {
        if (fijk_in.coord.i > kMaxFaceCoord || fijk_in.coord.j > kMaxFaceCoord ||
            fijk_in.coord.k > kMaxFaceCoord)
            return 0;  // out of range
        set_base_cell(h, face_ijk_to_base_cell(fijk_in));
        return h;
    }

    // walk up to res 0, recording one digit per step
    FaceIJK fijk = fijk_in;
    CoordIJK& ijk = fijk.coord;
    for (int r = res - 1; r >= 0; --r) {
        const CoordIJK last_ijk = ijk;
        CoordIJK last_center{};
        if (is_class_iii(r + 1)) {
            up_ap7(ijk);
            last_center = ijk;
            down_ap7(last_center);
        } else {
            up_ap7r(ijk);
            last_center = ijk;
            down_ap7r(last_center);
        }
        CoordIJK diff = ijk_sub(last_ijk, last_center);
        ijk_normalize(diff);
        set_digit(h, r + 1, unit_ijk_to_digit(diff));
    }

    if (ijk.i > kMaxFaceCoord || ijk.j > kMaxFaceCoord || ijk.k > kMaxFaceCoord) return 0;

    const int base_cell = face_ijk_to_base_cell(fijk);
    set_base_cell(h, base_cell);

    const int num_rots = face_ijk_to_base_cell_ccw_rot60(fijk);
    if (base_cell_is_pentagon(base_cell)) {
        if (leading_nonzero_digit(h) == kAxisK) {
            h = base_cell_is_cw_offset(base_cell, fijk.face) ? rotate60cw(h) : rotate60ccw(h);
        }
        for (int i = 0; i < num_rots; ++i) h = rotate_pent60ccw(h);
    } else {
        for (int i = 0; i < num_rots; ++i) h = rotate60ccw(h);
    }
    return h;
}

// walk the digits down from the base cell's home face; returns true when an
// overage past the face edge is possible
bool h3_to_face_ijk_with_initialized(CellIndex h, FaceIJK& fijk) {
    CoordIJK& ijk = fijk.coord;
    const int res = get_resolution(h);
    bool possible_overage = true;
    if (!base_cell_is_pentagon(get_base_cell(h)) &&
        (res == 0 || (ijk.i == 0 && ijk.j == 0 && ijk.k == 0)))
        possible_overage = false;
    for (int r = 1; r <= res; ++r) {
        if (is_class_iii(r))
            down_ap7(ijk);
        else
            down_ap7r(ijk);
        ijk_to_neighbor(ijk, get_digit(h, r));
    }
    return possible_overage;
}

void h3_to_face_ijk(CellIndex h, FaceIJK& fijk) {
    const int base_cell = get_base_cell(h);
    if (base_cell_is_pentagon(base_cell) && leading_nonzero_digit(h) == kAxisIK)
        h = rotate60cw(h);

    fijk = kBaseCellData[base_cell].home;
    if (!h3_to_face_ijk_with_initialized(h, fijk)) return;

    const CoordIJK orig_ijk = fijk.coord;
    int res = get_resolution(h);
    if (is_class_iii(res)) {
        down_ap7r(fijk.coord);
        ++res;
    }
    const bool pent_leading_4 =
        base_cell_is_pentagon(base_cell) && leading_nonzero_digit(h) == kAxisI;
    if (adjust_overage_class_ii(fijk, res, pent_leading_4, false) != kNoOverage) {
        if (base_cell_is_pentagon(base_cell)) {
            while (adjust_overage_class_ii(fijk, res, false, false) != kNoOverage) continue;
        }
        if (res != get_resolution(h)) up_ap7r(fijk.coord);
    } else if (res != get_resolution(h)) {
        fijk.coord = orig_ijk;
    }
}

}  // namespace

std::optional<CellIndex> cell_from_lat_lng(LatLngDeg point, int resolution) {
    if (resolution < 0 || resolution > kMaxCellResolution) return std::nullopt;
    if (!std::isfinite(point.lat) || !std::isfinite(point.lng)) return std::nullopt;
    const GeoRad g{point.lat * kPi / 180.0, point.lng * kPi / 180.0};
    FaceIJK fijk{};
    geo_to_face_ijk(g, resolution, fijk);
    const CellIndex h = face_ijk_to_h3(fijk, resolution);
    if (h == 0) return std::nullopt;
    return h;
}

std::optional<LatLngDeg> cell_to_lat_lng(CellIndex cell) {
    if (!is_valid_cell(cell)) return std::nullopt;
    FaceIJK fijk{};
    h3_to_face_ijk(cell, fijk);
    GeoRad g{};
    face_ijk_to_geo(fijk, get_resolution(cell), g);
    return LatLngDeg{g.lat * 180.0 / kPi, constrain_lng(g.lng) * 180.0 / kPi};
}

bool is_valid_cell(CellIndex cell) {
    if ((cell & kHighBitMask) != 0) return false;
    if (get_mode(cell) != static_cast<int>(kModeCell)) return false;
    if (get_reserved(cell) != 0) return false;
    const int base_cell = get_base_cell(cell);
    if (base_cell < 0 || base_cell >= kNumBaseCells) return false;
    const int res = get_resolution(cell);
    bool found_first = false;
    for (int r = 1; r <= res; ++r) {
        const int digit = get_digit(cell, r);
        if (!found_first && digit != kCenter) {
            found_first = true;
            if (base_cell_is_pentagon(base_cell) && digit == kAxisK) return false;
        }
        if (digit < kCenter || digit >= kInvalidDigit) return false;
    }
    for (int r = res + 1; r <= kMaxCellResolution; ++r) {
        if (get_digit(cell, r) != kInvalidDigit) return false;
    }
    return true;
}

int cell_resolution(CellIndex cell) { return get_resolution(cell); }

bool is_pentagon(CellIndex cell) {
    return is_valid_cell(cell) && base_cell_is_pentagon(get_base_cell(cell)) &&
           leading_nonzero_digit(cell) == kCenter;
}

std::string cell_to_string(CellIndex cell) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    bool started = false;
    for (int shift = 60; shift >= 0; shift -= 4) {
        const int nibble = static_cast<int>((cell >> shift) & 0xF);
        if (!started && nibble == 0 && shift != 0) continue;
        started = true;
        out.push_back(digits[nibble]);
    }
    return out;
}

std::optional<CellIndex> cell_from_string(const std::string& text) {
    if (text.empty() || text.size() > 16) return std::nullopt;
    CellIndex value = 0;
    for (char c : text) {
        const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        int nibble;
        if (lower >= '0' && lower <= '9')
            nibble = lower - '0';
        else if (lower >= 'a' && lower <= 'f')
            nibble = lower - 'a' + 10;
        else
            return std::nullopt;
        value = (value << 4) | static_cast<CellIndex>(nibble);
    }
    if (!is_valid_cell(value)) return std::nullopt;
    return value;
}

}  // namespace gear::geo

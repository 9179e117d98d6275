// Copyright 2026 The hopqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hopqec/circuit/layout.h"

#include "hopqec/error.h"

namespace hopqec::circuit {

int Check::weight() const {
    int w = 0;
    for (int c : corners) {
        w += c >= 0;
    }
    return w;
}

std::vector<uint32_t> Check::data() const {
    std::vector<uint32_t> out;
    for (int c : corners) {
        if (c >= 0) {
            out.push_back(static_cast<uint32_t>(c));
        }
    }
    return out;
}

Layout Layout::build(int d) {
    if (d < 3 || d % 2 == 0) {
        fail(ErrorCode::InvalidArgument, "distance must be odd and at least 3");
    }
    if (d > 101) {
        fail(ErrorCode::InvalidArgument, "distance too large");
    }
    Layout out;
    out.distance = d;
    out.data_count = static_cast<uint32_t>(d * d);
    std::vector<Check> z, x;
    for (int b = 0; b <= d; b++) {
        for (int a = 0; a <= d; a++) {
            bool z_type = (a + b) % 2 == 0;
            bool top_bottom = b == 0 || b == d;
            bool left_right = a == 0 || a == d;
            if (top_bottom && left_right) {
                continue;
            }
            if (top_bottom && !z_type) {
                continue;
            }
            if (left_right && z_type) {
                continue;
            }
            Check c;
            c.basis = z_type ? CheckBasis::Z : CheckBasis::X;
            c.a = a;
            c.b = b;
            const int di[4] = {-1, 0, -1, 0};
            const int dj[4] = {-1, -1, 0, 0};
            for (int k = 0; k < 4; k++) {
                int i = a + di[k], j = b + dj[k];
                if (i >= 0 && i < d && j >= 0 && j < d) {
                    c.corners[k] = j * d + i;
                }
            }
            if (z_type) {
                c.group = a % 2 == 0 ? CheckGroup::A : CheckGroup::B;
                z.push_back(c);
            } else {
                c.group = a % 2 == 0 ? CheckGroup::C : CheckGroup::D;
                x.push_back(c);
            }
        }
    }
    uint32_t next = static_cast<uint32_t>(d * d);
    for (auto *list : {&z, &x}) {
        for (auto &c : *list) {
            c.ancilla = next++;
            out.checks.push_back(c);
        }
    }
    return out;
}

Layout Layout::subset(const std::vector<size_t> &check_ids) const {
    if (check_ids.empty()) {
        fail(ErrorCode::InvalidArgument, "cropped layout needs at least one check");
    }
    std::vector<int32_t> remap(num_data(), -1);
    for (size_t id : check_ids) {
        if (id >= checks.size()) {
            fail(ErrorCode::InvalidArgument, "check index out of range");
        }
        for (uint32_t q : checks[id].data()) {
            remap[q] = 0;
        }
    }
    Layout out;
    out.distance = distance;
    out.full_patch = false;
    for (auto &r : remap) {
        if (r == 0) {
            r = static_cast<int32_t>(out.data_count++);
        }
    }
    uint32_t next = out.data_count;
    for (size_t id : check_ids) {
        Check c = checks[id];
        for (auto &corner : c.corners) {
            if (corner >= 0) {
                corner = remap[corner];
            }
        }
        c.ancilla = next++;
        out.checks.push_back(c);
    }
    return out;
}

std::vector<const Check *> Layout::group(CheckGroup g) const {
    std::vector<const Check *> out;
    for (const auto &c : checks) {
        if (c.group == g) {
            out.push_back(&c);
        }
    }
    return out;
}

std::vector<const Check *> Layout::checks_of(CheckBasis basis) const {
    std::vector<const Check *> out;
    for (const auto &c : checks) {
        if (c.basis == basis) {
            out.push_back(&c);
        }
    }
    return out;
}

std::vector<uint32_t> Layout::logical_z() const {
    if (!full_patch) {
        fail(ErrorCode::InvalidArgument, "cropped layouts have no logical operators");
    }
    std::vector<uint32_t> out;
    for (int j = 0; j < distance; j++) {
        out.push_back(data_index(0, j));
    }
    return out;
}

std::vector<uint32_t> Layout::logical_x() const {
    if (!full_patch) {
        fail(ErrorCode::InvalidArgument, "cropped layouts have no logical operators");
    }
    std::vector<uint32_t> out;
    for (int i = 0; i < distance; i++) {
        out.push_back(data_index(i, 0));
    }
    return out;
}

}  // namespace hopqec::circuit

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

#ifndef HOPQEC_OPEN_SYSTEM_CHANNEL_IO_H
#define HOPQEC_OPEN_SYSTEM_CHANNEL_IO_H

#include <iosfwd>
#include <optional>
#include <string>

#include "hopqec/pauli/pauli_channel.h"

namespace hopqec::open_system {

/// Text channel file:
///
///     # comment lines
///     ARITY 5
///     P 0.01
///     LAMBDA 0.0132
///     FIDELITY 0.9812
///     NORMALIZATION <free text>
///     IIIII 0.9812
///     ZIIII 0.0041
///     ...
///
/// Pauli lines list every positive weight in descending order; character k of a Pauli string is
/// qubit k (qubit 0 is the check qubit). FIDELITY is informational and checked on read.
struct ChannelFile {
    double p = 0;
    std::optional<double> lambda;
    std::string normalization;
    PauliChannel channel;
};

inline constexpr const char *kDefaultNormalization =
    "p = tau * gamma2; tau = pi / zeta0; zeta0/2pi = 5 MHz; gamma_phi = gamma1 / 2";

void write_channel_file(std::ostream &out, const ChannelFile &file);
ChannelFile read_channel_file(std::istream &in);

void save_channel_file(const std::string &path, const ChannelFile &file);
ChannelFile load_channel_file(const std::string &path);

}  // namespace hopqec::open_system

#endif

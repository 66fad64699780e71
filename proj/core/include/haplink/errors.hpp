// SPDX-License-Identifier: Apache-2.0
//
// haplink - secrecy outage analysis for HAP-relayed FSO/THz/Ka-band networks
// Copyright (C) 2026 The haplink authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace haplink {

// Raised when an input lies outside the physical or mathematical domain of a model.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed special-function parameter sets (overlapping pole families, bad orders).
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double partial = 0.0, double error_bound = 0.0)
        : std::runtime_error(what), partial_(partial), error_bound_(error_bound) {}

    double partial() const noexcept { return partial_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double partial_;
    double error_bound_;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
    explicit ConfigError(const std::string& issue) : ConfigError(std::vector<std::string>{issue}) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) {
            if (!out.empty()) out += "\n";
            out += s;
        }
        return out;
    }
    std::vector<std::string> issues_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace haplink

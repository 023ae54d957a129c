/*
* Copyright (C) 2026 rumorsim contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef RUMOR_HARNESS_REPORT_HPP
#define RUMOR_HARNESS_REPORT_HPP

#include "rumor/harness/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rumor::harness
{

struct CheckRow {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct StatReport {
    ExperimentKind kind = ExperimentKind::flln;
    std::vector<CheckRow> rows;
    std::vector<std::string> warnings;

    void add(std::string name, double statistic, double threshold, bool pass);
    /// Conjunction of the row verdicts; true for an empty report.
    bool passed() const;
    std::size_t failures() const;

    void write_csv(std::ostream& os) const;
    void write_text(std::ostream& os) const;
};

} // namespace rumor::harness

#endif

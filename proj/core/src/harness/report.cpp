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
#include "rumor/harness/report.hpp"

#include "rumor/harness/io.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace rumor::harness
{

void StatReport::add(std::string name, double statistic, double threshold, bool pass)
{
    rows.push_back({std::move(name), statistic, threshold, pass});
}

bool StatReport::passed() const
{
    return failures() == 0;
}

std::size_t StatReport::failures() const
{
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.pass; }));
}

void StatReport::write_csv(std::ostream& os) const
{
    os << "#schema: check,statistic,threshold,pass (experiment " << to_string(kind) << ")\n";
    os << "check,statistic,threshold,pass\n";
    for (const CheckRow& r : rows)
        os << r.name << ',' << format_double(r.statistic) << ',' << format_double(r.threshold) << ','
           << (r.pass ? 1 : 0) << '\n';
}

void StatReport::write_text(std::ostream& os) const
{
    std::size_t width = 5;
    for (const CheckRow& r : rows)
        width = std::max(width, r.name.size());
    os << "experiment: " << to_string(kind) << '\n';
    for (const CheckRow& r : rows) {
        os << "  " << (r.pass ? "pass " : "FAIL ") << std::left << std::setw(static_cast<int>(width)) << r.name
           << std::right << "  stat " << std::setw(12) << std::setprecision(6) << r.statistic << "  threshold "
           << std::setw(10) << r.threshold << '\n';
    }
    for (const std::string& w : warnings)
        os << "  warning: " << w << '\n';
    os << "verdict: " << (passed() ? "pass" : "FAIL") << " (" << rows.size() - failures() << '/' << rows.size()
       << " checks)\n";
}

} // namespace rumor::harness

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
#ifndef RUMOR_HARNESS_IO_HPP
#define RUMOR_HARNESS_IO_HPP

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rumor::harness
{

/// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

/// Creates the directory if needed; throws ConfigError when that is impossible.
void ensure_directory(const std::filesystem::path& dir);

/// "#schema:" comment, header line, then rows formatted with %.17g.
void write_csv(std::ostream& os, const std::string& schema, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

} // namespace rumor::harness

#endif

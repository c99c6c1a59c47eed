/*
 * Copyright 2026 The mofo project
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <functional>
#include <string>

namespace mofo::acceptance
{

struct CheckResult
{
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

using ReportFn = std::function<void(const CheckResult&)>;

/// Runs the full verification suite, invoking `report` once per check in
/// order. Intermediate files go under `out_dir`. Returns the number of failed
/// checks.
int run_all(const std::string& out_dir, const ReportFn& report);

/// "PASS criterion 3: ..." / "FAIL criterion 3: ..." line for one result.
std::string format_line(const CheckResult& result);

}  // namespace mofo::acceptance

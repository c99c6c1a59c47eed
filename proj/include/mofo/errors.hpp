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

#include <stdexcept>
#include <string>

namespace mofo
{

/// Invalid configuration, bad argument, or violated precondition.
class ConfigError : public std::invalid_argument
{
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Non-finite value or numerical breakdown during a run.
class NumericError : public std::runtime_error
{
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mofo

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
#include "rumor/model_laws.hpp"

#include "rumor/errors.hpp"


namespace rumor
{

void ModelLaws::validate() const
{
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ConfigError("model laws: beta must lie in [0,1]");
}

void LmrLaws::validate() const
{
    if (!(delta >= 0.0 && delta <= 1.0))
        throw ConfigError("lmr laws: delta must lie in [0,1]");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ConfigError("lmr laws: beta must lie in [0,1]");
}

} // namespace rumor

// Copyright 2026 The eprb Authors
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

#ifndef EPRB_EPRB_HPP_
#define EPRB_EPRB_HPP_

#include "eprb/analysis.hpp"
#include "eprb/engine.hpp"
#include "eprb/hvmodels.hpp"
#include "eprb/quantum.hpp"
#include "eprb/random.hpp"
#include "eprb/stats.hpp"
#include "eprb/types.hpp"

#endif  // EPRB_EPRB_HPP_

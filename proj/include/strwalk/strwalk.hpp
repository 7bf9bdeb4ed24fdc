// Copyright 2026 The strwalk Authors
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

#pragma once

#include "strwalk/amplitude.hpp"
#include "strwalk/big.hpp"
#include "strwalk/cells.hpp"
#include "strwalk/circuit.hpp"
#include "strwalk/compiler.hpp"
#include "strwalk/estimator.hpp"
#include "strwalk/layout.hpp"
#include "strwalk/reachable.hpp"
#include "strwalk/rewriting.hpp"
#include "strwalk/rewriting_json.hpp"
#include "strwalk/rule_generation.hpp"
#include "strwalk/spectral.hpp"
#include "strwalk/transitions.hpp"
#include "strwalk/verifier.hpp"

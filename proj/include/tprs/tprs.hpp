// Copyright 2026 The tprs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "tprs/errors.hpp"
#include "tprs/limits.hpp"
#include "tprs/linalg.hpp"
#include "tprs/random.hpp"
#include "tprs/montecarlo.hpp"
#include "tprs/growth.hpp"
#include "tprs/ensembles.hpp"
#include "tprs/resources.hpp"
#include "tprs/distinguishers.hpp"
#include "tprs/bounds.hpp"
#include "tprs/experiments.hpp"

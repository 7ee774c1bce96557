// Copyright 2026 The ska Authors
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

#ifndef SKA_SKA_HPP_
#define SKA_SKA_HPP_

#include "ska/analysis.hpp"
#include "ska/error.hpp"
#include "ska/generators.hpp"
#include "ska/json_io.hpp"
#include "ska/mmi.hpp"
#include "ska/partition.hpp"
#include "ska/rational.hpp"
#include "ska/source_model.hpp"
#include "ska/structure.hpp"
#include "ska/submodular_min.hpp"
#include "ska/subset.hpp"

#endif  // SKA_SKA_HPP_

// Copyright 2026 The bellpair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BELLPAIR_BELLPAIR_HPP
#define BELLPAIR_BELLPAIR_HPP

#include "bellpair/basis.hpp"
#include "bellpair/chsh.hpp"
#include "bellpair/core.hpp"
#include "bellpair/dependency.hpp"
#include "bellpair/entanglement.hpp"
#include "bellpair/fixtures.hpp"
#include "bellpair/pipeline.hpp"
#include "bellpair/random.hpp"
#include "bellpair/reduction.hpp"
#include "bellpair/search.hpp"
#include "bellpair/state_io.hpp"
#include "bellpair/statevec.hpp"

#endif  // BELLPAIR_BELLPAIR_HPP

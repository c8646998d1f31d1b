// Copyright 2026 The fairshare Authors
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

#ifndef FAIRSHARE_FAIRSHARE_HPP
#define FAIRSHARE_FAIRSHARE_HPP

#include "fairshare/axioms.hpp"
#include "fairshare/claims.hpp"
#include "fairshare/core.hpp"
#include "fairshare/problems.hpp"
#include "fairshare/random.hpp"
#include "fairshare/scalar.hpp"
#include "fairshare/solutions.hpp"

#endif  // FAIRSHARE_FAIRSHARE_HPP

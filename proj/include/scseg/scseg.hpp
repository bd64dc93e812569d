// Copyright 2026 The scseg Authors.
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

#ifndef SCSEG_SCSEG_HPP_
#define SCSEG_SCSEG_HPP_

#include "scseg/basis.hpp"
#include "scseg/config.hpp"
#include "scseg/eval.hpp"
#include "scseg/image.hpp"
#include "scseg/pipeline.hpp"
#include "scseg/random.hpp"
#include "scseg/ransac.hpp"
#include "scseg/regression.hpp"
#include "scseg/sparse.hpp"
#include "scseg/types.hpp"

#endif  // SCSEG_SCSEG_HPP_

// Copyright 2026 The BlockRR Authors
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

#ifndef BLOCKRR_BLOCKRR_HPP_
#define BLOCKRR_BLOCKRR_HPP_

#include "blockrr/dataset.hpp"
#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"
#include "blockrr/laplace.hpp"
#include "blockrr/matrix.hpp"
#include "blockrr/mechanisms.hpp"
#include "blockrr/partition_config.hpp"
#include "blockrr/pipeline.hpp"
#include "blockrr/prior.hpp"
#include "blockrr/random.hpp"
#include "blockrr/retention.hpp"
#include "blockrr/verifier.hpp"
#include "blockrr/version.hpp"
#include "blockrr/weights.hpp"

#endif  // BLOCKRR_BLOCKRR_HPP_

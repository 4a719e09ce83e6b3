// Copyright 2026 The FactGraph Authors
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

#include "factgraph/checkpoint.hpp"
#include "factgraph/config.hpp"
#include "factgraph/corpus.hpp"
#include "factgraph/encoder.hpp"
#include "factgraph/error.hpp"
#include "factgraph/graph.hpp"
#include "factgraph/metrics.hpp"
#include "factgraph/online.hpp"
#include "factgraph/pipeline.hpp"
#include "factgraph/retrieval.hpp"
#include "factgraph/selection.hpp"
#include "factgraph/srl.hpp"
#include "factgraph/text.hpp"
#include "factgraph/train.hpp"
#include "factgraph/verifier.hpp"

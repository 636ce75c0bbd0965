// Copyright 2026 The Authors.
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

#include "ndd/errors.hpp"
#include "ndd/generator.hpp"
#include "ndd/greedy.hpp"
#include "ndd/ilp.hpp"
#include "ndd/io.hpp"
#include "ndd/lagrangian.hpp"
#include "ndd/lp.hpp"
#include "ndd/model.hpp"
#include "ndd/objective.hpp"
#include "ndd/oracle.hpp"
#include "ndd/parallel.hpp"
#include "ndd/pipage.hpp"
#include "ndd/report.hpp"
#include "ndd/rng.hpp"
#include "ndd/simplex.hpp"

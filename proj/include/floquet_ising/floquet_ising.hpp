// Copyright 2026 The floquet-ising Authors
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

#include "floquet_ising/analysis.hpp"
#include "floquet_ising/closed_form.hpp"
#include "floquet_ising/errors.hpp"
#include "floquet_ising/io.hpp"
#include "floquet_ising/kgrid.hpp"
#include "floquet_ising/mode_algebra.hpp"
#include "floquet_ising/oracle.hpp"
#include "floquet_ising/propagator.hpp"
#include "floquet_ising/time_series.hpp"

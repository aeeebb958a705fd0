/*
Copyright 2026 The EdgeFlow Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include "edgeflow/binding.hpp"
#include "edgeflow/builtins.hpp"
#include "edgeflow/controller.hpp"
#include "edgeflow/dax.hpp"
#include "edgeflow/environment.hpp"
#include "edgeflow/error.hpp"
#include "edgeflow/executor.hpp"
#include "edgeflow/objectives.hpp"
#include "edgeflow/offloading.hpp"
#include "edgeflow/scheduling.hpp"
#include "edgeflow/serialize.hpp"
#include "edgeflow/simulation.hpp"
#include "edgeflow/store.hpp"
#include "edgeflow/workflow.hpp"

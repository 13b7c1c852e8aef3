// Copyright 2026 The maxleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "maxleak/channel.hpp"
#include "maxleak/core.hpp"
#include "maxleak/design.hpp"
#include "maxleak/errors.hpp"
#include "maxleak/majorization.hpp"
#include "maxleak/oracle.hpp"
#include "maxleak/ordering.hpp"
#include "maxleak/robust.hpp"
#include "maxleak/serialize.hpp"

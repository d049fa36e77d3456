// Copyright 2026 The dmupdate Authors
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

// Umbrella header.

#include "dmupdate/linalg.hpp"
#include "dmupdate/density.hpp"
#include "dmupdate/spider.hpp"
#include "dmupdate/update.hpp"
#include "dmupdate/ddm.hpp"
#include "dmupdate/diagnostics.hpp"
#include "dmupdate/random.hpp"
#include "dmupdate/textcirc.hpp"
#include "dmupdate/lexicon_io.hpp"
#include "dmupdate/demos.hpp"
#include "dmupdate/verify.hpp"
#include "dmupdate/cli.hpp"

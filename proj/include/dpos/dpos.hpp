// Copyright 2026 The DPoS Governance Authors
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


// Umbrella header.

#ifndef DPOS_DPOS_HPP_
#define DPOS_DPOS_HPP_

#include "dpos/calendar.hpp"
#include "dpos/config.hpp"
#include "dpos/conversion.hpp"
#include "dpos/error.hpp"
#include "dpos/events.hpp"
#include "dpos/governance.hpp"
#include "dpos/power.hpp"
#include "dpos/preference_sim.hpp"
#include "dpos/rational.hpp"
#include "dpos/resistance.hpp"
#include "dpos/snapshot.hpp"
#include "dpos/snapshot_store.hpp"
#include "dpos/takeover_game.hpp"

#endif  // DPOS_DPOS_HPP_

#pragma once

#include "fishgame/bargaining.hpp"
#include "fishgame/errors.hpp"
#include "fishgame/field.hpp"
#include "fishgame/game.hpp"
#include "fishgame/io.hpp"
#include "fishgame/model.hpp"
#include "fishgame/scenario.hpp"
#include "fishgame/viability.hpp"

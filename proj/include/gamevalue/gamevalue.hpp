#pragma once

// Exact-arithmetic toolkit for the value of correlation in finite
// nonnegative strategic-form games: maximal-surplus correlated equilibria
// with dual certificates, Nash enumeration, mediation and enforcement
// values, and a simple-congestion-game subsystem.

#include "gamevalue/congestion.hpp"
#include "gamevalue/equilibria.hpp"
#include "gamevalue/errors.hpp"
#include "gamevalue/game.hpp"
#include "gamevalue/io.hpp"
#include "gamevalue/linear_program.hpp"
#include "gamevalue/rational.hpp"
#include "gamevalue/search.hpp"
#include "gamevalue/values.hpp"

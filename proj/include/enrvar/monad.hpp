#pragma once

#include "enrvar/monad/free.hpp"
#include "enrvar/monad/relmonad.hpp"

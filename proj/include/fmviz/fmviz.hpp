#pragma once

#include "fmviz/color.hpp"
#include "fmviz/corpus.hpp"
#include "fmviz/diff.hpp"
#include "fmviz/error.hpp"
#include "fmviz/frame.hpp"
#include "fmviz/mutgen.hpp"
#include "fmviz/patterns.hpp"
#include "fmviz/png.hpp"
#include "fmviz/render.hpp"

#pragma once

// Umbrella header for the synset induction toolkit.

#include "synsets/chinese_whispers.hpp"
#include "synsets/clustering.hpp"
#include "synsets/embeddings.hpp"
#include "synsets/error.hpp"
#include "synsets/eval.hpp"
#include "synsets/expand.hpp"
#include "synsets/graph.hpp"
#include "synsets/markov_clustering.hpp"
#include "synsets/maxmax.hpp"
#include "synsets/merge.hpp"
#include "synsets/parallel.hpp"
#include "synsets/partition.hpp"
#include "synsets/pipeline.hpp"
#include "synsets/prng.hpp"
#include "synsets/synonymy.hpp"
#include "synsets/text.hpp"
#include "synsets/vocab.hpp"
#include "synsets/watset.hpp"

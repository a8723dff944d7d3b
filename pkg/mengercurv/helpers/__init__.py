from mengercurv.helpers.rng import CounterStream, DrawBlock, chunk_bounds

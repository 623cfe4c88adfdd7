# Corpus acceptance runs (slow)

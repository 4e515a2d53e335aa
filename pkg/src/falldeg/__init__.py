"""Last fall degree machinery, Weil descent and a zero-dimensional solver over finite fields."""

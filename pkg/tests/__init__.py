# monobs test suite

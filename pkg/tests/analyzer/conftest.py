from tests.analyzer.fixtures import *

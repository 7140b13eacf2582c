from tests.calculus.fixtures import *

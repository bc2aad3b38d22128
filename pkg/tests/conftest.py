import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from abacbench import parse_policy
from abacbench.datasets import load_dataset

COURSE_POLICY = """
userAttrib(alice, uid=alice, position=student, crsTaken={cs101 cs601})
userAttrib(bob, uid=bob, position=student, crsTaken={cs601})
userAttrib(carol, uid=carol, position=faculty, crsTaught={cs101})

resourceAttrib(gb101, type=gradebook, crs=cs101)
resourceAttrib(gb601, type=gradebook, crs=cs601)

rule(position in {student}; type in {gradebook}; {readMyScores}; crsTaken contains crs)
rule(position in {faculty}; type in {gradebook}; {addScore readScore}; crsTaught contains crs)
"""


@pytest.fixture(scope="session")
def course_policy():
    return parse_policy(COURSE_POLICY, "course")


@pytest.fixture(scope="session")
def university():
    return load_dataset("university")


@pytest.fixture(scope="session")
def healthcare():
    return load_dataset("healthcare")


@pytest.fixture(scope="session")
def project_mgmt():
    return load_dataset("project-mgmt")


@pytest.fixture(scope="session")
def workforce():
    return load_dataset("workforce")


@pytest.fixture(scope="session")
def edocument():
    return load_dataset("e-document")


@pytest.fixture(scope="session")
def small_bundled(university, healthcare, project_mgmt):
    return [("healthcare", healthcare), ("project-mgmt", project_mgmt), ("university", university)]


@pytest.fixture(scope="session")
def all_bundled(small_bundled, workforce, edocument):
    return small_bundled + [("workforce", workforce), ("e-document", edocument)]

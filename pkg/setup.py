from setuptools import find_packages, setup


setup(
    name='qpsurf',
    packages=find_packages(exclude=["test", "test.*", "examples", "examples.*", "docs", "out", "dist"])
)

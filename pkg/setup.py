from setuptools import setup

setup(
    packages=["polygonal"],
    entry_points={"console_scripts": ["polygonal = polygonal.cli:main"]},
)

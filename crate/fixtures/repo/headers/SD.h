#ifndef SD_h
#define SD_h

// FAT16/FAT32 file access on SD cards over SPI.

#define FILE_READ 0
#define FILE_WRITE 1

class File {
public:
  unsigned long write(unsigned char data);
  int read();
  int peek();
  int available();
  void flush();
  bool seek(unsigned long position);
  unsigned long position();
  unsigned long size();
  void close();
};

class SDClass {
public:
  bool begin(unsigned char csPin);
  File open(const char *filename, unsigned char mode);
  bool exists(const char *filepath);
  bool mkdir(const char *filepath);
  bool remove(const char *filepath);
};

#endif

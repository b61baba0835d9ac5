#ifndef TFT_h
#define TFT_h

// Color tft display driver over SPI.

class TFT {
public:
  TFT(unsigned char cs, unsigned char dc, unsigned char rst);
  void begin();
  void background(unsigned char red, unsigned char green, unsigned char blue);
  void stroke(unsigned char red, unsigned char green, unsigned char blue);
  void fill(unsigned char red, unsigned char green, unsigned char blue);
  void text(const char *text, int x, int y);
  void point(int x, int y);
  void line(int x1, int y1, int x2, int y2);
  void rect(int x, int y, int width, int height);
  void circle(int x, int y, int radius);
  int width();
  int height();
};

#endif
